#include "sos/core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "sos/rng.hpp"

namespace sos {

bool BehaviorPolicy::is_friend(NodeId id) const {
  return std::binary_search(friends.begin(), friends.end(), id);
}

double distance(Vec2 a, Vec2 b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

namespace {

std::uint64_t fnv1a(std::uint64_t hash, std::uint64_t value) {
  for (int i = 0; i < 8; ++i) {
    hash ^= (value >> (8 * i)) & 0xffu;
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

}  // namespace

std::uint64_t bundle_digest(const Bundle& b) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  h = fnv1a(h, b.bundle_id);
  h = fnv1a(h, b.source);
  h = fnv1a(h, b.destination);
  h = fnv1a(h, static_cast<std::uint64_t>(b.size));
  return h;
}

std::uint64_t make_bundle_id(NodeId source, std::uint64_t sequence) {
  return (static_cast<std::uint64_t>(source) << 40) | sequence;
}

double ScenarioConfig::area_diagonal() const {
  return std::hypot(area_width, area_height);
}

void ScenarioConfig::validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw ConfigError(what);
  };
  require(n_nodes > 0, "n_nodes: must be positive");
  require(area_width > 0 && area_height > 0, "area: width and height must be positive");
  require(t_range >= 0, "t_range: must be non-negative");
  require(energy_init >= 0, "energy_init: must be non-negative");
  require(tx_power >= 0 && rx_power >= 0, "tx_power/rx_power: must be non-negative");
  require(selfish_fraction >= 0 && selfish_fraction <= 1, "selfish_fraction: must be in [0,1]");
  require(pause_time >= 0, "pause_time: must be non-negative");
  require(sim_duration > 0, "sim_duration: must be positive");
  require(traffic.cbr_interval_s > 0, "cbr_interval: must be positive");
  require(traffic.packet_size > 0, "packet_size: must be positive");
  require(traffic.header_size >= 0, "header_size: must be non-negative");
  require(f_b > 0, "f_b: must be positive");
  require(p_f > 0, "p_f: must be positive");
  require(bitrate_bps > 0, "bitrate: must be positive");
  require(bundle_ttl_s > 0, "bundle_ttl: must be positive");
  require(buffer_capacity > 0, "buffer_capacity: must be positive");
  require(election_period_s > 0, "t_election: must be positive");
  require(rehab_p >= 0 && rehab_p <= 1, "rehab_p: must be in [0,1]");
  require(social_selfish_share >= 0 && social_selfish_share <= 1,
          "social_selfish_share: must be in [0,1]");
  require(speed_min > 0 && speed_max >= speed_min, "speed_min/speed_max: need 0 < min <= max");
  if (weight_coeffs) {
    double sum = 0;
    for (double c : *weight_coeffs) {
      require(c >= 0, "weight_coeffs: coefficients must be non-negative");
      sum += c;
    }
    require(std::abs(sum - 1.0) <= 1e-9, "weight_coeffs: coefficients must sum to 1");
  }
}

const NodeProfile& World::node(NodeId id) const {
  if (id >= nodes.size()) throw std::out_of_range("node id out of range");
  return nodes[id];
}

NodeProfile& World::node(NodeId id) {
  if (id >= nodes.size()) throw std::out_of_range("node id out of range");
  return nodes[id];
}

namespace {

std::array<double, 5> simplex_sample(Rng& rng) {
  // normalized unit exponentials give a uniform draw from the simplex
  std::array<double, 5> v{};
  double sum = 0;
  for (double& x : v) {
    x = -std::log(1.0 - rng.uniform());
    sum += x;
  }
  for (double& x : v) x /= sum;
  return v;
}

}  // namespace

World new_scenario(const ScenarioConfig& config) {
  config.validate();

  World world;
  world.config = config;

  Rng rng = Rng(config.seed).fork(0);

  if (config.weight_coeffs) {
    world.weight_coeffs = *config.weight_coeffs;
  } else {
    world.weight_coeffs = simplex_sample(rng);
  }

  const std::size_t n = config.n_nodes;
  world.nodes.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    NodeProfile& p = world.nodes[i];
    p.id = static_cast<NodeId>(i);
    p.energy_now = p.energy_max = config.energy_init;
    p.buffer_now = p.buffer_max = config.buffer_capacity;
    p.position = {rng.uniform(0, config.area_width), rng.uniform(0, config.area_height)};
  }

  // The selfish set is a pure function of the seed: shuffle the ids once and
  // take a prefix of exactly floor(selfish_fraction * n).
  const auto selfish_count =
      static_cast<std::size_t>(std::floor(config.selfish_fraction * static_cast<double>(n)));
  std::vector<NodeId> order(n);
  std::iota(order.begin(), order.end(), NodeId{0});
  rng.shuffle(order);

  const auto social_count =
      static_cast<std::size_t>(std::floor(config.social_selfish_share *
                                          static_cast<double>(selfish_count)));
  const std::size_t friend_count = std::max<std::size_t>(1, n / 5);

  for (std::size_t i = 0; i < selfish_count; ++i) {
    NodeProfile& p = world.nodes[order[i]];
    if (i < social_count && n > 1) {
      p.behavior.kind = BehaviorPolicy::Kind::SociallySelfish;
      std::vector<NodeId> others;
      others.reserve(n - 1);
      for (NodeId id = 0; id < n; ++id) {
        if (id != p.id) others.push_back(id);
      }
      rng.shuffle(others);
      others.resize(std::min(friend_count, others.size()));
      std::sort(others.begin(), others.end());
      p.behavior.friends = std::move(others);
    } else {
      p.behavior.kind = BehaviorPolicy::Kind::IndividuallySelfish;
    }
  }

  return world;
}

}  // namespace sos
