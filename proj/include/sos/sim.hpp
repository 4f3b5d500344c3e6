#pragma once

#include <functional>
#include <string>

#include "sos/core.hpp"
#include "sos/ledger.hpp"

namespace sos::sim {

enum class Strategy { Sos, SsarLike, CaisLike, NoIncentive };

Strategy strategy_from_string(const std::string& name);
const char* to_string(Strategy s);

enum class EventKind {
  Move,
  Contact,
  WindowClose,
  ElectionTick,
  GenerateBundle,
  ForwardAttempt,
  MetricsSample,
};

/// One metrics row per completed run; the CSV columns.
struct MetricsRow {
  Strategy strategy = Strategy::Sos;
  double selfish_pct = 0.0;
  double pause_time_s = 0.0;
  std::uint64_t seed = 0;
  double pdr = 0.0;
  double throughput_kbps = 0.0;
  double avg_delay_ms = 0.0;
  double avg_energy_j = 0.0;
  bool pdr_defined = true;  // false when no bundle was generated
};

/// Bookkeeping invariants checked after every run.
struct RunAudit {
  long generated = 0;
  long delivered = 0;
  long dropped = 0;
  long in_flight = 0;
  bool ledger_replay_ok = true;

  bool conserved() const { return generated == delivered + dropped + in_flight; }
};

struct RunResult {
  MetricsRow metrics;
  RunAudit audit;
};

struct TraceRow {
  double time = 0.0;
  EventKind kind = EventKind::Move;
  NodeId node = 0;
  std::string detail;
};

using TraceSink = std::function<void(const TraceRow&)>;

const char* to_string(EventKind k);

enum class DropReason { None, TtlExpired, SelfishRefusal, NoCredit, BufferOverflow, Expulsion };

struct ForwardDecision {
  bool forward = false;
  DropReason drop_reason = DropReason::None;  // None with forward=false means keep carrying
  bool keep = false;
};

/// Relay policy applied to one candidate hand-off. Strategy decides which
/// rule runs: behavior policy for Sos and NoIncentive, a willingness
/// threshold for SsarLike, a credit gate for CaisLike.
ForwardDecision forward_decision(const NodeProfile& relay, const Bundle& bundle,
                                 const NodeProfile& next_hop, Strategy strategy,
                                 double cais_credit);

struct EnergyCost {
  double sender_j = 0.0;
  double receiver_j = 0.0;
};

/// Airtime energy for one transmission of the given on-air size.
EnergyCost energy_account(std::int64_t bytes_on_air, double bitrate_bps, double tx_power,
                          double rx_power);

/// Runs one scenario to completion. Identical (config, strategy) pairs
/// produce identical results and traces.
RunResult run(const ScenarioConfig& config, Strategy strategy, const TraceSink& trace = {});

}  // namespace sos::sim
