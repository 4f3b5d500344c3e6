#include "sos/weighting.hpp"

#include <algorithm>
#include <cmath>

namespace sos::weighting {

double energy_ratio(const NodeProfile& p) {
  if (p.energy_max <= 0) throw DegenerateInputError("energy_max: must be positive");
  return p.energy_now / p.energy_max;
}

double buffer_ratio(const NodeProfile& p) {
  if (p.buffer_max <= 0) throw DegenerateInputError("buffer_max: must be positive");
  return p.buffer_now / p.buffer_max;
}

double ttl_ratio(const Bundle& b) {
  if (b.ttl_total <= 0) throw DegenerateInputError("ttl_total: must be positive");
  return b.ttl_remaining / b.ttl_total;
}

double ttl_feature(std::span<const Bundle> carried) {
  if (carried.empty()) return 1.0;
  double sum = 0;
  for (const Bundle& b : carried) sum += ttl_ratio(b);
  return sum / static_cast<double>(carried.size());
}

DegreeResult node_degree(const World& world, NodeId id) {
  const NodeProfile& self = world.node(id);
  const std::size_t n = world.nodes.size();
  if (n < 2) throw DegenerateInputError("node_degree: need at least two nodes");
  DegreeResult r;
  for (const NodeProfile& other : world.nodes) {
    if (other.id == id) continue;
    if (distance(self.position, other.position) < world.config.t_range) ++r.count;
  }
  r.normalized = static_cast<double>(r.count) / static_cast<double>(n - 1);
  return r;
}

DistanceResult relative_distance(const World& world, NodeId id) {
  const NodeProfile& self = world.node(id);
  DistanceResult r;
  Vec2 mean = self.position;
  std::size_t members = 1;
  for (const NodeProfile& other : world.nodes) {
    if (other.id == id) continue;
    if (distance(self.position, other.position) < world.config.t_range) {
      mean.x += other.position.x;
      mean.y += other.position.y;
      ++members;
    }
  }
  if (members == 1) {
    r.isolated = true;
    r.meters = 0.0;
    r.closeness = 0.0;  // most peripheral by convention
    return r;
  }
  mean.x /= static_cast<double>(members);
  mean.y /= static_cast<double>(members);
  r.meters = distance(self.position, mean);
  double frac = std::clamp(r.meters / world.config.area_diagonal(), 0.0, 1.0);
  r.closeness = world.config.rd_rewards_centrality ? 1.0 - frac : frac;
  return r;
}

double composite_weight(const FeatureVector& f, const std::array<double, 5>& coeffs) {
  double sum = 0;
  for (double c : coeffs) {
    if (c < 0) throw ConfigError("weight_coeffs: coefficients must be non-negative");
    sum += c;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw ConfigError("weight_coeffs: coefficients must sum to 1");
  return f.energy_ratio * coeffs[0] + f.buffer_ratio * coeffs[1] + f.ttl_ratio * coeffs[2] +
         f.node_degree_norm * coeffs[3] + f.closeness * coeffs[4];
}

CooperationResult cooperation(const NodeProfile& p, std::size_t n) {
  if (n < 1) throw DegenerateInputError("cooperation: need at least one node");
  CooperationResult r;
  r.contacts = p.contacts;
  r.threshold = static_cast<long>((n + 2) / 3);  // ceil(n/3)
  r.cooperative = r.contacts > r.threshold;
  return r;
}

FeatureVector compute_features(const World& world, NodeId id, std::span<const Bundle> carried) {
  const NodeProfile& p = world.node(id);
  FeatureVector f;
  f.energy_ratio = energy_ratio(p);
  f.buffer_ratio = buffer_ratio(p);
  f.ttl_ratio = ttl_feature(carried);
  f.node_degree_norm = world.nodes.size() >= 2 ? node_degree(world, id).normalized : 0.0;
  f.closeness = relative_distance(world, id).closeness;
  return f;
}

}  // namespace sos::weighting
