#include "sos/fusion.hpp"

#include <algorithm>
#include <cmath>

namespace sos::fusion {

namespace {
constexpr double kMassTolerance = 1e-9;
constexpr double kTinyDenominator = 1e-12;
}  // namespace

Bpa::Bpa(unsigned frame_size) : frame_size_(frame_size) {
  if (frame_size == 0 || frame_size > 31) {
    throw DegenerateInputError("frame_size: must be in [1,31]");
  }
}

void Bpa::set(Mask subset, double mass) {
  if (mass == 0.0) {
    masses_.erase(subset);
  } else {
    masses_[subset] = mass;
  }
}

void Bpa::add(Mask subset, double mass) {
  if (mass != 0.0) masses_[subset] += mass;
}

double Bpa::mass(Mask subset) const {
  auto it = masses_.find(subset);
  return it == masses_.end() ? 0.0 : it->second;
}

void Bpa::normalize() {
  double total = 0;
  for (const auto& [subset, m] : masses_) total += m;
  if (total <= kTinyDenominator) throw ConflictError("normalize: total mass is zero");
  for (auto& [subset, m] : masses_) m /= total;
}

void Bpa::validate() const {
  double total = 0;
  for (const auto& [subset, m] : masses_) {
    if (subset == 0) throw DegenerateInputError("bpa: empty set must carry no mass");
    if ((subset & ~frame_mask()) != 0) throw DegenerateInputError("bpa: subset outside frame");
    if (m < 0) throw DegenerateInputError("bpa: negative mass");
    total += m;
  }
  if (std::abs(total - 1.0) > kMassTolerance) {
    throw DegenerateInputError("bpa: masses must sum to 1");
  }
}

Bpa binary_bpa(double cooperative, double selfish) {
  Bpa b(2);
  b.set(kCooperative, cooperative);
  b.set(kSelfish, selfish);
  double rest = 1.0 - cooperative - selfish;
  if (std::abs(rest) > kMassTolerance) b.set(kCooperative | kSelfish, rest);
  b.validate();
  return b;
}

Bpa ds_combine(const Bpa& b1, const Bpa& b2) {
  if (b1.frame_size() != b2.frame_size()) {
    throw DegenerateInputError("ds_combine: frame sizes differ");
  }
  b1.validate();
  b2.validate();
  Bpa out(b1.frame_size());
  double conflict = 0;
  for (const auto& [a, ma] : b1.masses()) {
    for (const auto& [b, mb] : b2.masses()) {
      const Mask c = a & b;
      const double m = ma * mb;
      if (c == 0) {
        conflict += m;
      } else {
        out.add(c, m);
      }
    }
  }
  const double denom = 1.0 - conflict;
  if (denom <= kTinyDenominator) throw ConflictError("ds_combine: total conflict");
  for (const auto& [subset, m] : out.masses()) out.set(subset, m / denom);
  return out;
}

Bpa eds_combine(const Bpa& b1, const Bpa& b2, ImportanceFactor if1, ImportanceFactor if2) {
  if (b1.frame_size() != b2.frame_size()) {
    throw DegenerateInputError("eds_combine: frame sizes differ");
  }
  if (if1.value <= 0 || if1.value >= 1 || if2.value <= 0 || if2.value >= 1) {
    throw DegenerateInputError("eds_combine: importance factors must be in (0,1)");
  }
  b1.validate();
  b2.validate();
  const double e1 = if1.value / if2.value;
  const double e2 = if2.value / if1.value;
  Bpa out(b1.frame_size());
  double total = 0;
  for (const auto& [a, ma] : b1.masses()) {
    for (const auto& [b, mb] : b2.masses()) {
      const Mask c = a & b;
      if (c == 0) continue;
      const double m = std::pow(ma, e1) * std::pow(mb, e2);
      out.add(c, m);
      total += m;
    }
  }
  if (total <= kTinyDenominator) throw ConflictError("eds_combine: no non-empty agreement");
  for (const auto& [subset, m] : out.masses()) out.set(subset, m / total);
  return out;
}

ImportanceResult importance_factors(std::span<const double> reputations) {
  if (reputations.size() < 2) {
    throw DegenerateInputError("importance_factors: need at least two monitors");
  }
  double total = 0;
  for (double r : reputations) {
    if (r < 0) throw DegenerateInputError("importance_factors: reputations must be non-negative");
    total += r;
  }
  ImportanceResult result;
  result.factors.reserve(reputations.size());
  if (total <= 0) {
    result.uniform_fallback = true;
    const double uniform = 1.0 / static_cast<double>(reputations.size());
    for (std::size_t i = 0; i < reputations.size(); ++i) {
      result.factors.push_back({uniform});
    }
    return result;
  }
  for (double r : reputations) {
    double f = std::clamp(r / total, kImportanceClamp, 1.0 - kImportanceClamp);
    result.factors.push_back({f});
  }
  return result;
}

Bpa report_to_bpa(Verdict v, ImportanceFactor f) {
  if (f.value <= 0 || f.value >= 1) {
    throw DegenerateInputError("report_to_bpa: importance factor must be in (0,1)");
  }
  return v == Verdict::Cooperative ? binary_bpa(f.value, 1.0 - f.value)
                                   : binary_bpa(1.0 - f.value, f.value);
}

CifBreakdown cif_fuse_detailed(std::span<const std::pair<Verdict, ImportanceFactor>> reports,
                               FusionVariant variant) {
  if (reports.size() < 2) throw DegenerateInputError("cif_fuse: need at least two reports");
  double factor_total = 0;
  for (const auto& [v, f] : reports) {
    if (f.value <= 0 || f.value >= 1) {
      throw DegenerateInputError("cif_fuse: importance factors must be in (0,1)");
    }
    factor_total += f.value;
  }

  std::vector<double> exponents;
  exponents.reserve(reports.size());
  for (const auto& [v, f] : reports) {
    if (variant == FusionVariant::WorkedExample) {
      exponents.push_back(f.value / (1.0 - f.value));
    } else {
      const double rest = factor_total - f.value;
      if (rest <= 0) {
        throw DegenerateInputError("cif_fuse: literal exponent needs other factors to sum > 0");
      }
      exponents.push_back(f.value / rest);
    }
  }

  double unnormalized[2] = {0.0, 0.0};  // [cooperative, selfish]
  for (int state = 0; state < 2; ++state) {
    double sum = 0, prod = 1;
    for (std::size_t i = 0; i < reports.size(); ++i) {
      const Bpa b = report_to_bpa(reports[i].first, reports[i].second);
      const double m = b.mass(state == 0 ? kCooperative : kSelfish);
      const double powered = std::pow(m, exponents[i]);
      sum += powered;
      prod *= powered;
    }
    unnormalized[state] = sum - prod;
  }

  const double total = unnormalized[0] + unnormalized[1];
  if (total <= kTinyDenominator) throw DegenerateInputError("cif_fuse: degenerate evidence");
  return CifBreakdown{unnormalized[0], unnormalized[1],
                      binary_bpa(unnormalized[0] / total, unnormalized[1] / total)};
}

Bpa cif_fuse(std::span<const std::pair<Verdict, ImportanceFactor>> reports,
             FusionVariant variant) {
  return cif_fuse_detailed(reports, variant).fused;
}

Verdict classify(const Bpa& fused) {
  return fused.mass(kCooperative) >= 0.5 ? Verdict::Cooperative : Verdict::Selfish;
}

const char* to_string(Verdict v) {
  return v == Verdict::Cooperative ? "cooperative" : "selfish";
}

}  // namespace sos::fusion
