#pragma once

#include <array>
#include <span>

#include "sos/core.hpp"

namespace sos::weighting {

/// The five election-eligibility features, each normalized into [0,1].
struct FeatureVector {
  double energy_ratio = 0.0;
  double buffer_ratio = 0.0;
  double ttl_ratio = 0.0;
  double node_degree_norm = 0.0;
  double closeness = 0.0;
};

/// Remaining over maximum energy.
double energy_ratio(const NodeProfile& p);

/// Remaining over maximum buffer.
double buffer_ratio(const NodeProfile& p);

/// Remaining over total TTL for one bundle.
double ttl_ratio(const Bundle& b);

/// Mean ttl_ratio over carried bundles; 1.0 for an empty buffer.
double ttl_feature(std::span<const Bundle> carried);

struct DegreeResult {
  std::size_t count = 0;
  double normalized = 0.0;  // count / (n - 1)
};

/// Neighbors strictly inside the transmission range.
DegreeResult node_degree(const World& world, NodeId id);

struct DistanceResult {
  double meters = 0.0;    // distance to the mean position of self plus neighbors
  double closeness = 0.0; // 1 - meters/diagonal, clamped into [0,1]
  bool isolated = false;  // no neighbor in range; closeness forced to 0
};

DistanceResult relative_distance(const World& world, NodeId id);

/// Convex combination of the five features. Coefficients must be
/// non-negative and sum to 1 within 1e-9.
double composite_weight(const FeatureVector& f, const std::array<double, 5>& coeffs);

struct CooperationResult {
  long contacts = 0;
  long threshold = 0;  // ceil(n / 3)
  bool cooperative = false;
};

/// A node is cooperative when its contact count exceeds ceil(n/3).
CooperationResult cooperation(const NodeProfile& p, std::size_t n);

FeatureVector compute_features(const World& world, NodeId id, std::span<const Bundle> carried);

}  // namespace sos::weighting
