#include "sos/sim.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>
#include <set>
#include <sstream>
#include <vector>

#include "sos/election.hpp"
#include "sos/monitoring.hpp"
#include "sos/rng.hpp"
#include "sos/vcg.hpp"
#include "sos/weighting.hpp"

namespace sos::sim {

Strategy strategy_from_string(const std::string& name) {
  if (name == "sos") return Strategy::Sos;
  if (name == "ssar") return Strategy::SsarLike;
  if (name == "cais") return Strategy::CaisLike;
  if (name == "none") return Strategy::NoIncentive;
  throw ConfigError("strategy: expected one of sos, ssar, cais, none; got '" + name + "'");
}

const char* to_string(Strategy s) {
  switch (s) {
    case Strategy::Sos: return "sos";
    case Strategy::SsarLike: return "ssar";
    case Strategy::CaisLike: return "cais";
    case Strategy::NoIncentive: return "none";
  }
  return "unknown";
}

const char* to_string(EventKind k) {
  switch (k) {
    case EventKind::Move: return "move";
    case EventKind::Contact: return "contact";
    case EventKind::WindowClose: return "window_close";
    case EventKind::ElectionTick: return "election";
    case EventKind::GenerateBundle: return "generate";
    case EventKind::ForwardAttempt: return "forward";
    case EventKind::MetricsSample: return "metrics";
  }
  return "unknown";
}

EnergyCost energy_account(std::int64_t bytes_on_air, double bitrate_bps, double tx_power,
                          double rx_power) {
  if (bytes_on_air <= 0) return {0.0, 0.0};
  const double airtime = static_cast<double>(bytes_on_air) * 8.0 / bitrate_bps;
  return {tx_power * airtime, rx_power * airtime};
}

namespace {

double ssar_tie(const NodeProfile& relay, NodeId next) {
  switch (relay.behavior.kind) {
    case BehaviorPolicy::Kind::Cooperative: return 1.0;
    case BehaviorPolicy::Kind::SociallySelfish: return relay.behavior.is_friend(next) ? 1.0 : 0.2;
    case BehaviorPolicy::Kind::IndividuallySelfish: return 0.2;
  }
  return 0.0;
}

constexpr double kSsarThreshold = 0.3;
constexpr double kCaisOriginCost = 2.0;
constexpr double kCaisForwardReward = 2.0;  // intra-community rate

}  // namespace

ForwardDecision forward_decision(const NodeProfile& relay, const Bundle& bundle,
                                 const NodeProfile& next_hop, Strategy strategy,
                                 double cais_credit) {
  if (bundle.ttl_remaining <= 0) return {false, DropReason::TtlExpired, false};

  switch (strategy) {
    case Strategy::Sos:
    case Strategy::NoIncentive:
      switch (relay.behavior.kind) {
        case BehaviorPolicy::Kind::Cooperative:
          return {true, DropReason::None, false};
        case BehaviorPolicy::Kind::IndividuallySelfish:
          if (relay.id == bundle.source) return {true, DropReason::None, false};
          return {false, DropReason::SelfishRefusal, false};
        case BehaviorPolicy::Kind::SociallySelfish:
          if (relay.behavior.is_friend(next_hop.id)) return {true, DropReason::None, false};
          return {false, DropReason::SelfishRefusal, false};
      }
      break;
    case Strategy::SsarLike: {
      const double resource =
          std::min(relay.buffer_max > 0 ? relay.buffer_now / relay.buffer_max : 0.0,
                   relay.energy_max > 0 ? relay.energy_now / relay.energy_max : 0.0);
      const double willingness = ssar_tie(relay, next_hop.id) * resource;
      if (willingness > kSsarThreshold) return {true, DropReason::None, false};
      return {false, DropReason::None, true};  // reluctant, keeps carrying
    }
    case Strategy::CaisLike:
      if (relay.behavior.kind == BehaviorPolicy::Kind::Cooperative ||
          relay.id == bundle.source) {
        return {true, DropReason::None, false};
      }
      if (cais_credit > 0) return {true, DropReason::None, false};
      return {false, DropReason::NoCredit, false};
  }
  return {false, DropReason::SelfishRefusal, false};
}

namespace {

struct Event {
  double time = 0.0;
  EventKind kind = EventKind::Move;
  NodeId node = 0;
  std::uint64_t seq = 0;
};

struct EventAfter {
  bool operator()(const Event& a, const Event& b) const {
    if (a.time != b.time) return a.time > b.time;
    if (a.kind != b.kind) return static_cast<int>(a.kind) > static_cast<int>(b.kind);
    if (a.node != b.node) return a.node > b.node;
    return a.seq > b.seq;
  }
};

struct MobilityState {
  Vec2 waypoint{};
  double speed = 0.0;
  double pause_until = 0.0;
  bool moving = false;
};

class Engine {
 public:
  Engine(const ScenarioConfig& cfg, Strategy strategy, const TraceSink& trace)
      : cfg_(cfg),
        strategy_(strategy),
        trace_(trace),
        world_(new_scenario(cfg)),
        ledger_(cfg.n_nodes),
        rng_mobility_(Rng(cfg.seed).fork(1)),
        rng_traffic_(Rng(cfg.seed).fork(2)),
        rng_rehab_(Rng(cfg.seed).fork(3)) {
    n_ = world_.nodes.size();
    custody_.resize(n_);
    adjacency_.assign(n_ * n_, 0);
    neighbors_.resize(n_);
    mobility_.resize(n_);
    cais_credit_.assign(n_, 0.0);
    original_behavior_.reserve(n_);
    for (const NodeProfile& p : world_.nodes) original_behavior_.push_back(p.behavior);
    for (MobilityState& m : mobility_) m.pause_until = cfg.pause_time;
  }

  RunResult run();

 private:
  void schedule(double time, EventKind kind, NodeId node = 0) {
    queue_.push({time, kind, node, seq_++});
  }

  void emit(double time, EventKind kind, NodeId node, std::string detail) {
    if (trace_) trace_({time, kind, node, std::move(detail)});
  }

  bool active(const NodeProfile& p) const { return !p.expelled() && p.energy_now > 0; }

  void handle_move(double t);
  void handle_generate(double t);
  void handle_forward(double t);
  void handle_election(double t);
  void handle_window_close(double t);
  void open_window(double t);
  void sync_profiles();
  void drop_bundle(NodeId holder, const Bundle& b, DropReason reason, double t);
  void observe(NodeId relay, const Bundle& b, monitoring::ForwardOutcome outcome, double t);

  ScenarioConfig cfg_;
  Strategy strategy_;
  TraceSink trace_;
  World world_;
  ledger::ReputationLedger ledger_;
  Rng rng_mobility_;
  Rng rng_traffic_;
  Rng rng_rehab_;

  std::size_t n_ = 0;
  std::priority_queue<Event, std::vector<Event>, EventAfter> queue_;
  std::uint64_t seq_ = 0;

  std::vector<std::vector<Bundle>> custody_;
  std::vector<std::uint8_t> adjacency_;
  std::vector<std::vector<NodeId>> neighbors_;
  std::vector<MobilityState> mobility_;
  std::vector<double> cais_credit_;
  std::vector<BehaviorPolicy> original_behavior_;
  std::set<std::uint64_t> received_this_tick_;

  // monitoring state for the open window
  monitoring::MonitorRotation rotation_;
  monitoring::WindowLog window_log_;
  std::vector<monitoring::MonitorSet> monitor_sets_;
  std::vector<double> window_reputations_;
  bool window_open_ = false;
  int window_id_ = 0;

  election::Heads heads_{};
  int round_ = 0;

  double last_ttl_update_ = 0.0;
  std::uint64_t bundle_seq_ = 0;

  long generated_ = 0;
  long delivered_ = 0;
  long dropped_ = 0;
  double delay_sum_s_ = 0.0;
  std::int64_t delivered_payload_bytes_ = 0;
};

void Engine::sync_profiles() {
  for (NodeId id = 0; id < n_; ++id) {
    world_.nodes[id].reputation = ledger_.reputation(id);
    world_.nodes[id].punishment = ledger_.punishment(id);
  }
}

void Engine::drop_bundle(NodeId holder, const Bundle& b, DropReason reason, double t) {
  ++dropped_;
  world_.nodes[holder].buffer_now += static_cast<double>(b.size);
  const char* why = "";
  switch (reason) {
    case DropReason::TtlExpired: why = "ttl_expired"; break;
    case DropReason::SelfishRefusal: why = "selfish_refusal"; break;
    case DropReason::NoCredit: why = "no_credit"; break;
    case DropReason::BufferOverflow: why = "buffer_overflow"; break;
    case DropReason::Expulsion: why = "expulsion"; break;
    case DropReason::None: break;
  }
  std::ostringstream detail;
  detail << "bundle=" << b.bundle_id << " reason=" << why;
  emit(t, EventKind::ForwardAttempt, holder, detail.str());
}

void Engine::observe(NodeId relay, const Bundle& b, monitoring::ForwardOutcome outcome,
                     double t) {
  if (strategy_ != Strategy::Sos || !window_open_) return;
  const monitoring::MonitorSet& set = monitor_sets_[relay];
  for (NodeId monitor : set.members()) {
    if (world_.nodes[monitor].expelled()) continue;
    window_log_.record(monitoring::observe_forward(monitor, relay, b, outcome, t));
  }
}

void Engine::handle_move(double t) {
  const double dt = 1.0;
  for (NodeId id = 0; id < n_; ++id) {
    NodeProfile& p = world_.nodes[id];
    if (p.expelled() || p.energy_now <= 0) continue;
    MobilityState& m = mobility_[id];
    if (!m.moving) {
      if (t < m.pause_until) continue;
      m.waypoint = {rng_mobility_.uniform(0, cfg_.area_width),
                    rng_mobility_.uniform(0, cfg_.area_height)};
      m.speed = rng_mobility_.uniform(cfg_.speed_min, cfg_.speed_max);
      m.moving = true;
    }
    const double dx = m.waypoint.x - p.position.x;
    const double dy = m.waypoint.y - p.position.y;
    const double dist = std::hypot(dx, dy);
    const double step = m.speed * dt;
    if (dist <= step) {
      p.position = m.waypoint;
      m.moving = false;
      m.pause_until = t + cfg_.pause_time;
    } else {
      p.position.x += dx / dist * step;
      p.position.y += dy / dist * step;
    }
  }

  // contact detection; a fresh pairing bumps both contact counters
  for (auto& list : neighbors_) list.clear();
  for (NodeId i = 0; i < n_; ++i) {
    const NodeProfile& a = world_.nodes[i];
    if (!active(a)) {
      for (NodeId j = 0; j < n_; ++j) adjacency_[i * n_ + j] = adjacency_[j * n_ + i] = 0;
      continue;
    }
    for (NodeId j = i + 1; j < n_; ++j) {
      const NodeProfile& b = world_.nodes[j];
      bool linked = active(b) && distance(a.position, b.position) < cfg_.t_range;
      std::uint8_t& cell = adjacency_[i * n_ + j];
      if (linked && !cell) {
        world_.nodes[i].contacts += 1;
        world_.nodes[j].contacts += 1;
        std::ostringstream detail;
        detail << "peer=" << j;
        emit(t, EventKind::Contact, i, detail.str());
      }
      cell = linked ? 1 : 0;
      adjacency_[j * n_ + i] = cell;
      if (linked) {
        neighbors_[i].push_back(j);
        neighbors_[j].push_back(i);
      }
    }
  }

  if (t + dt <= cfg_.sim_duration) schedule(t + dt, EventKind::Move);
}

void Engine::handle_generate(double t) {
  // both draws always happen so the stream stays aligned across outcomes
  const NodeId src = static_cast<NodeId>(rng_traffic_.below(n_));
  NodeId dst = n_ > 1 ? static_cast<NodeId>(rng_traffic_.below(n_ - 1)) : src;
  if (n_ > 1 && dst >= src) ++dst;

  const double next = t + cfg_.traffic.cbr_interval_s;
  if (next <= cfg_.sim_duration) schedule(next, EventKind::GenerateBundle);

  if (n_ < 2) return;
  if (world_.nodes[src].expelled() || world_.nodes[dst].expelled()) return;

  Bundle b;
  b.bundle_id = make_bundle_id(src, bundle_seq_++);
  b.source = src;
  b.destination = dst;
  b.created_at = t;
  b.ttl_total = b.ttl_remaining = cfg_.bundle_ttl_s;
  b.size = cfg_.traffic.packet_size;
  b.digest = bundle_digest(b);
  b.hop_log.emplace_back(src, t);

  ++generated_;
  if (strategy_ == Strategy::CaisLike) {
    cais_credit_[src] = std::max(0.0, cais_credit_[src] - kCaisOriginCost);
  }

  NodeProfile& source = world_.nodes[src];
  if (source.buffer_now < static_cast<double>(b.size)) {
    ++dropped_;
    std::ostringstream detail;
    detail << "bundle=" << b.bundle_id << " reason=buffer_overflow";
    emit(t, EventKind::GenerateBundle, src, detail.str());
    return;
  }
  source.buffer_now -= static_cast<double>(b.size);
  custody_[src].push_back(b);

  std::ostringstream detail;
  detail << "bundle=" << b.bundle_id << " dst=" << dst;
  emit(t, EventKind::GenerateBundle, src, detail.str());
}

void Engine::handle_forward(double t) {
  const double dt = t - last_ttl_update_;
  last_ttl_update_ = t;
  received_this_tick_.clear();

  // TTL decay applies to every carried bundle, including ones held by
  // inactive nodes
  for (NodeId id = 0; id < n_; ++id) {
    std::vector<Bundle> keep;
    keep.reserve(custody_[id].size());
    for (Bundle& b : custody_[id]) {
      b.ttl_remaining -= dt;
      if (b.ttl_remaining <= 0) {
        drop_bundle(id, b, DropReason::TtlExpired, t);
      } else {
        keep.push_back(std::move(b));
      }
    }
    custody_[id] = std::move(keep);
  }

  for (NodeId id = 0; id < n_; ++id) {
    NodeProfile& relay = world_.nodes[id];
    if (!active(relay) || custody_[id].empty()) continue;

    std::vector<Bundle> pending = std::move(custody_[id]);
    custody_[id].clear();

    for (Bundle& b : pending) {
      if (received_this_tick_.count(b.bundle_id)) {
        custody_[id].push_back(std::move(b));
        continue;
      }

      // greedy geographic next hop: the closest neighbor strictly closer to
      // the destination; the destination itself wins outright
      const Vec2 goal = world_.nodes[b.destination].position;
      NodeId next = id;
      bool found = false;
      if (adjacency_[id * n_ + b.destination]) {
        next = b.destination;
        found = true;
      } else {
        const double own = distance(relay.position, goal);
        double best = own - 1e-9;
        for (NodeId cand : neighbors_[id]) {
          const double d = distance(world_.nodes[cand].position, goal);
          if (d < best) {
            best = d;
            next = cand;
            found = true;
          }
        }
      }
      if (!found) {
        custody_[id].push_back(std::move(b));
        continue;
      }

      const ForwardDecision decision =
          forward_decision(relay, b, world_.nodes[next], strategy_, cais_credit_[id]);
      if (!decision.forward) {
        if (decision.keep) {
          custody_[id].push_back(std::move(b));
        } else {
          observe(id, b, monitoring::ForwardOutcome::NotForwarded, t);
          drop_bundle(id, b, decision.drop_reason, t);
        }
        continue;
      }

      NodeProfile& receiver = world_.nodes[next];
      const EnergyCost cost = energy_account(b.size + cfg_.traffic.header_size,
                                             cfg_.bitrate_bps, cfg_.tx_power, cfg_.rx_power);
      const bool receiver_needs_buffer = next != b.destination;
      if (relay.energy_now < cost.sender_j || receiver.energy_now < cost.receiver_j ||
          (receiver_needs_buffer && receiver.buffer_now < static_cast<double>(b.size))) {
        custody_[id].push_back(std::move(b));  // stalled, not refused
        continue;
      }

      relay.energy_now -= cost.sender_j;
      receiver.energy_now -= cost.receiver_j;
      relay.buffer_now += static_cast<double>(b.size);
      b.hop_log.emplace_back(next, t);
      observe(id, b, monitoring::ForwardOutcome::ForwardedMatch, t);
      if (strategy_ == Strategy::CaisLike && id != b.source) {
        cais_credit_[id] += kCaisForwardReward;
      }

      if (next == b.destination) {
        ++delivered_;
        delay_sum_s_ += t - b.created_at;
        delivered_payload_bytes_ += b.size;
        std::ostringstream detail;
        detail << "bundle=" << b.bundle_id << " delivered hops=" << b.hop_log.size();
        emit(t, EventKind::ForwardAttempt, next, detail.str());
      } else {
        receiver.buffer_now -= static_cast<double>(b.size);
        received_this_tick_.insert(b.bundle_id);
        std::ostringstream detail;
        detail << "bundle=" << b.bundle_id << " to=" << next;
        emit(t, EventKind::ForwardAttempt, id, detail.str());
        custody_[next].push_back(std::move(b));
      }
    }
  }

  if (t + 1.0 <= cfg_.sim_duration) schedule(t + 1.0, EventKind::ForwardAttempt);
}

void Engine::open_window(double t) {
  window_log_ = monitoring::WindowLog(window_id_++, t, t + cfg_.election_period_s);
  window_open_ = true;
  monitor_sets_.assign(n_, monitoring::MonitorSet{});
  std::vector<NodeId> eligible;
  for (NodeId id = 0; id < n_; ++id) {
    const NodeProfile& p = world_.nodes[id];
    if (p.expelled()) continue;
    if (id == heads_.ch || id == heads_.ih) continue;  // the rotation skips the MH itself
    eligible.push_back(id);
  }
  for (NodeId relay = 0; relay < n_; ++relay) {
    if (world_.nodes[relay].expelled()) continue;
    monitor_sets_[relay] =
        rotation_.select(eligible, heads_.mh, relay, t, t + cfg_.election_period_s);
  }
  window_reputations_.resize(n_);
  for (NodeId id = 0; id < n_; ++id) window_reputations_[id] = ledger_.reputation(id);
}

void Engine::handle_election(double t) {
  long eligible = 0;
  for (const NodeProfile& p : world_.nodes) {
    if (!p.expelled()) ++eligible;
  }
  if (eligible < 3) {
    emit(t, EventKind::ElectionTick, 0, "skipped quorum");
    return;
  }

  const std::size_t q = election::default_pool_size(n_);
  election::ElectionRecord record = election::run_round(world_, custody_, round_, q);

  for (NodeProfile& p : world_.nodes) {
    if (p.role == Role::CommunityHead || p.role == Role::MonitoringHead ||
        p.role == Role::IncentiveHead) {
      p.role = Role::Member;
    }
  }
  world_.nodes[record.heads.ch].role = Role::CommunityHead;
  world_.nodes[record.heads.mh].role = Role::MonitoringHead;
  world_.nodes[record.heads.ih].role = Role::IncentiveHead;
  heads_ = record.heads;

  for (NodeId head : {record.heads.ch, record.heads.mh, record.heads.ih}) {
    const vcg::PaymentBreakdown breakdown = vcg::head_breakdown(record, head, cfg_.f_b);
    ledger_.apply_delta(head, breakdown.r_p, ledger::Reason::ElectionHead, t);
  }
  for (const auto& [voter, credit] : vcg::participation_payment(record, cfg_.f_b)) {
    ledger_.apply_delta(voter, credit, ledger::Reason::ElectionParticipation, t);
  }
  sync_profiles();

  std::ostringstream detail;
  detail << "round=" << record.round << " ch=" << record.heads.ch << " mh=" << record.heads.mh
         << " ih=" << record.heads.ih << " votes=" << record.votes(record.heads.ch);
  emit(t, EventKind::ElectionTick, record.heads.ch, detail.str());

  ++round_;
  open_window(t);
}

void Engine::handle_window_close(double t) {
  if (!window_open_) return;
  const std::vector<monitoring::TrustReport> reports = window_log_.close();
  window_open_ = false;

  // group by subject; report order within a subject is by monitor id
  std::map<NodeId, std::vector<monitoring::TrustReport>> by_subject;
  for (const monitoring::TrustReport& r : reports) by_subject[r.subject].push_back(r);

  for (const auto& [subject, subject_reports] : by_subject) {
    if (subject_reports.size() < 2) {
      emit(t, EventKind::WindowClose, subject, "skipped single_report");
      continue;
    }
    if (ledger_.expelled(subject)) continue;
    std::vector<double> reputations;
    reputations.reserve(subject_reports.size());
    for (const monitoring::TrustReport& r : subject_reports) {
      reputations.push_back(window_reputations_[r.monitor]);
    }
    const monitoring::RelayJudgement judgement = monitoring::fuse_and_pay_relay(
        ledger_, subject, subject_reports, reputations, cfg_.p_f, cfg_.fusion_variant, t);

    std::ostringstream detail;
    detail << "verdict=" << fusion::to_string(judgement.verdict)
           << " coop_mass=" << judgement.cooperative_mass
           << " reports=" << subject_reports.size();
    emit(t, EventKind::WindowClose, subject, detail.str());

    if (judgement.relay_stage == PunishmentStage::Expelled) {
      for (const Bundle& b : custody_[subject]) drop_bundle(subject, b, DropReason::Expulsion, t);
      custody_[subject].clear();
      world_.nodes[subject].behavior = original_behavior_[subject];
      emit(t, EventKind::WindowClose, subject, "expelled");
    }
  }
  sync_profiles();

  // the incentive takes hold: punished selfish nodes may turn cooperative
  if (strategy_ == Strategy::Sos) {
    for (NodeId id = 0; id < n_; ++id) {
      const PunishmentStage stage = ledger_.punishment(id).stage;
      const bool punished =
          stage == PunishmentStage::Warned || stage == PunishmentStage::NegativePaid;
      if (!punished || !original_behavior_[id].selfish() ||
          !world_.nodes[id].behavior.selfish()) {
        continue;
      }
      if (rng_rehab_.uniform() < cfg_.rehab_p) {
        world_.nodes[id].behavior = BehaviorPolicy{};  // cooperative from here on
        emit(t, EventKind::WindowClose, id, "rehabilitated");
      }
    }
  }
}

RunResult Engine::run() {
  schedule(0.0, EventKind::Move);
  schedule(0.0, EventKind::ForwardAttempt);
  const double first_traffic = cfg_.traffic.cbr_interval_s;
  if (first_traffic <= cfg_.sim_duration) schedule(first_traffic, EventKind::GenerateBundle);
  if (strategy_ == Strategy::Sos) {
    for (double t = 0.0; t < cfg_.sim_duration; t += cfg_.election_period_s) {
      schedule(t, EventKind::ElectionTick);
    }
    for (double t = cfg_.election_period_s; t <= cfg_.sim_duration;
         t += cfg_.election_period_s) {
      schedule(t, EventKind::WindowClose);
    }
  }
  if (trace_) {
    for (double t = 0.0; t <= cfg_.sim_duration; t += 10.0) {
      schedule(t, EventKind::MetricsSample);
    }
  }

  while (!queue_.empty()) {
    const Event e = queue_.top();
    queue_.pop();
    switch (e.kind) {
      case EventKind::Move: handle_move(e.time); break;
      case EventKind::GenerateBundle: handle_generate(e.time); break;
      case EventKind::ForwardAttempt: handle_forward(e.time); break;
      case EventKind::ElectionTick: handle_election(e.time); break;
      case EventKind::WindowClose: handle_window_close(e.time); break;
      case EventKind::MetricsSample: {
        std::ostringstream detail;
        detail << "generated=" << generated_ << " delivered=" << delivered_
               << " dropped=" << dropped_;
        emit(e.time, EventKind::MetricsSample, 0, detail.str());
        break;
      }
      case EventKind::Contact: break;  // trace-only kind, never queued
    }
  }

  RunResult result;
  RunAudit& audit = result.audit;
  audit.generated = generated_;
  audit.delivered = delivered_;
  audit.dropped = dropped_;
  for (const auto& held : custody_) audit.in_flight += static_cast<long>(held.size());

  const std::vector<double> replayed = ledger::ReputationLedger::replay(n_, ledger_.events());
  for (NodeId id = 0; id < n_; ++id) {
    if (replayed[id] != ledger_.reputation(id)) {
      audit.ledger_replay_ok = false;
      break;
    }
  }

  MetricsRow& row = result.metrics;
  row.strategy = strategy_;
  row.selfish_pct = cfg_.selfish_fraction * 100.0;
  row.pause_time_s = cfg_.pause_time;
  row.seed = cfg_.seed;
  row.pdr_defined = generated_ > 0;
  row.pdr = generated_ > 0 ? static_cast<double>(delivered_) / static_cast<double>(generated_)
                           : 0.0;
  row.avg_delay_ms = delivered_ > 0 ? delay_sum_s_ / static_cast<double>(delivered_) * 1000.0
                                    : 0.0;
  row.throughput_kbps =
      static_cast<double>(delivered_payload_bytes_) * 8.0 / cfg_.sim_duration / 1000.0;
  double consumed = 0;
  for (const NodeProfile& p : world_.nodes) consumed += p.energy_max - p.energy_now;
  row.avg_energy_j = consumed / static_cast<double>(n_);
  return result;
}

}  // namespace

RunResult run(const ScenarioConfig& config, Strategy strategy, const TraceSink& trace) {
  Engine engine(config, strategy, trace);
  return engine.run();
}

}  // namespace sos::sim
