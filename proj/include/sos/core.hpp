#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace sos {

using NodeId = std::uint32_t;

// Error taxonomy. Every throwing operation names the offending field or
// quantity in the message.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct QuorumError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct RoleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DegenerateInputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ConflictError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct LedgerError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct WindowError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Role { Member, CommunityHead, MonitoringHead, IncentiveHead, Gateway };

enum class PunishmentStage { Clean, Warned, NegativePaid, Expelled };

struct PunishmentState {
  PunishmentStage stage = PunishmentStage::Clean;
  int offense_count = 0;
  double debt = 0.0;
};

struct BehaviorPolicy {
  enum class Kind { Cooperative, IndividuallySelfish, SociallySelfish };
  Kind kind = Kind::Cooperative;
  std::vector<NodeId> friends;  // sorted; populated only for SociallySelfish

  bool is_friend(NodeId id) const;
  bool selfish() const { return kind != Kind::Cooperative; }
};

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

double distance(Vec2 a, Vec2 b);

/// One node's live state: resources, position, reputation, role and policy.
struct NodeProfile {
  NodeId id = 0;
  double energy_now = 0.0;
  double energy_max = 0.0;
  double buffer_now = 0.0;  // remaining free bytes
  double buffer_max = 0.0;
  Vec2 position{};
  long contacts = 0;  // lifetime contact count, feeds the cooperation test
  double reputation = 0.0;
  Role role = Role::Member;
  BehaviorPolicy behavior{};
  PunishmentState punishment{};

  bool expelled() const { return punishment.stage == PunishmentStage::Expelled; }
};

/// A message in flight. TTL counts down while the bundle is carried.
struct Bundle {
  std::uint64_t bundle_id = 0;
  NodeId source = 0;
  NodeId destination = 0;
  double created_at = 0.0;
  double ttl_total = 0.0;
  double ttl_remaining = 0.0;
  std::int64_t size = 0;  // payload bytes
  std::uint64_t digest = 0;
  std::vector<std::pair<NodeId, double>> hop_log;
};

/// Content digest over the bundle identity fields (id, source, destination,
/// payload size). Not cryptographic; only match/mismatch semantics matter.
std::uint64_t bundle_digest(const Bundle& b);

enum class FusionVariant { WorkedExample, Eq21Literal };

struct TrafficConfig {
  double cbr_interval_s = 1.0;
  std::int64_t packet_size = 1000;  // payload bytes per bundle
  std::int64_t header_size = 4;
};

struct ScenarioConfig {
  double area_width = 500.0;
  double area_height = 500.0;
  std::size_t n_nodes = 50;
  double t_range = 100.0;
  double energy_init = 90.0;
  double tx_power = 0.6;
  double rx_power = 0.3;
  double selfish_fraction = 0.0;
  double pause_time = 0.0;
  double sim_duration = 200.0;
  TrafficConfig traffic{};
  std::uint64_t seed = 1;
  FusionVariant fusion_variant = FusionVariant::WorkedExample;
  double f_b = 1.0;  // fixed election participation payment
  double p_f = 1.0;  // fixed forwarding payment
  // When unset, coefficients are drawn once per scenario from a seeded
  // uniform simplex sample and shared by every node and round.
  std::optional<std::array<double, 5>> weight_coeffs;

  double bitrate_bps = 250000.0;
  double bundle_ttl_s = 60.0;
  double buffer_capacity = 65536.0;
  double election_period_s = 100.0;
  double rehab_p = 0.8;                 // per-window chance a punished node turns cooperative
  double social_selfish_share = 0.5;    // fraction of selfish nodes that are socially selfish
  bool rd_rewards_centrality = true;    // false flips the closeness feature
  double speed_min = 1.0;
  double speed_max = 3.0;

  double area_diagonal() const;

  /// Throws ConfigError naming the violated field.
  void validate() const;
};

struct World {
  ScenarioConfig config;
  std::vector<NodeProfile> nodes;
  std::array<double, 5> weight_coeffs{};  // effective coefficients for this scenario

  const NodeProfile& node(NodeId id) const;
  NodeProfile& node(NodeId id);
};

/// Builds a world from the config: seeded uniform placement, exactly
/// floor(selfish_fraction * n) selfish policies, all reputations zero.
/// Identical configs (including seed) produce identical worlds.
World new_scenario(const ScenarioConfig& config);

std::uint64_t make_bundle_id(NodeId source, std::uint64_t sequence);

}  // namespace sos
