#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "sos/core.hpp"

namespace sos::fusion {

/// Subset of the frame encoded as a bitmask; bit i is atom i.
using Mask = std::uint32_t;

/// Basic probability assignment over a finite frame. Masses are defined on
/// non-empty subsets, each in [0,1], and sum to 1 within 1e-9.
class Bpa {
 public:
  explicit Bpa(unsigned frame_size);

  unsigned frame_size() const { return frame_size_; }
  Mask frame_mask() const { return (Mask{1} << frame_size_) - 1; }

  void set(Mask subset, double mass);
  void add(Mask subset, double mass);
  double mass(Mask subset) const;
  const std::map<Mask, double>& masses() const { return masses_; }

  /// Scales all masses so they sum to 1. Throws ConflictError when the
  /// total is not positive.
  void normalize();

  /// Throws DegenerateInputError on a negative mass, mass on the empty set,
  /// a subset outside the frame, or a total away from 1.
  void validate() const;

 private:
  unsigned frame_size_;
  std::map<Mask, double> masses_;
};

// Binary frame convention used by the trust layer.
inline constexpr Mask kCooperative = 1u << 0;
inline constexpr Mask kSelfish = 1u << 1;

enum class Verdict { Cooperative, Selfish };

/// Binary BPA helper over {Cooperative, Selfish}.
Bpa binary_bpa(double cooperative, double selfish);

/// A monitor's normalized reputation share, clamped into (0,1) so the
/// fusion exponents stay finite.
struct ImportanceFactor {
  double value = 0.5;
};

inline constexpr double kImportanceClamp = 1e-6;

/// Dempster's combination rule; works for any finite frame. Throws
/// ConflictError when the two assignments are in total conflict.
Bpa ds_combine(const Bpa& b1, const Bpa& b2);

/// Importance-weighted extension of Dempster's rule for two sources. The
/// first source's masses are raised to if1/if2 and the second's to if2/if1,
/// then combined and renormalized over non-empty intersections. Equal
/// factors reduce exactly to ds_combine.
Bpa eds_combine(const Bpa& b1, const Bpa& b2, ImportanceFactor if1, ImportanceFactor if2);

struct ImportanceResult {
  std::vector<ImportanceFactor> factors;
  bool uniform_fallback = false;  // all-zero reputations; uniform shares used
};

/// Each factor is the monitor's reputation over the total, clamped into
/// [1e-6, 1-1e-6]. Reputations must be non-negative; an all-zero list
/// yields uniform factors with the fallback flag set.
ImportanceResult importance_factors(std::span<const double> reputations);

/// A verdict and importance factor become a binary BPA: the reported state
/// carries the factor, the other state the complement.
Bpa report_to_bpa(Verdict v, ImportanceFactor f);

struct CifBreakdown {
  double raw_cooperative = 0.0;  // sum minus product, before normalization
  double raw_selfish = 0.0;
  Bpa fused;
};

/// Collective fusion of monitor reports into one binary BPA. For each state
/// the rule takes sum minus product of the per-report masses raised to a
/// per-report exponent, then normalizes across the two states.
///
/// The exponent depends on the variant: WorkedExample uses if/(1-if);
/// Eq21Literal uses if_x over the sum of the other factors.
CifBreakdown cif_fuse_detailed(std::span<const std::pair<Verdict, ImportanceFactor>> reports,
                               FusionVariant variant);

Bpa cif_fuse(std::span<const std::pair<Verdict, ImportanceFactor>> reports,
             FusionVariant variant);

/// Cooperative when the cooperative mass reaches 0.5; the midpoint gets the
/// benefit of the doubt.
Verdict classify(const Bpa& fused);

const char* to_string(Verdict v);

}  // namespace sos::fusion
