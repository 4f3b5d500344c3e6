#pragma once

#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "sos/fusion.hpp"
#include "sos/ledger.hpp"

namespace sos::monitoring {

using fusion::Verdict;

/// The four watchers assigned to one relay: the elected monitoring head
/// plus three assistants picked round-robin. Degraded sets (fewer
/// assistants, or no head when the relay is the head) are flagged.
struct MonitorSet {
  NodeId head = 0;
  bool head_present = false;
  std::vector<NodeId> assistants;
  double window_start = 0.0;
  double window_end = 0.0;
  bool degraded = false;

  bool contains(NodeId id) const;
  std::vector<NodeId> members() const;
};

enum class ForwardOutcome { ForwardedMatch, ForwardedMismatch, NotForwarded };

struct ForwardObservation {
  NodeId monitor = 0;
  NodeId relay = 0;
  std::uint64_t bundle_id = 0;
  std::uint64_t expected_digest = 0;
  ForwardOutcome observed = ForwardOutcome::NotForwarded;
  double time = 0.0;
};

struct TrustReport {
  NodeId monitor = 0;
  NodeId subject = 0;
  Verdict verdict = Verdict::Cooperative;
  int window = 0;
};

/// Rotating cursor choosing monitor assistants. The cursor walks node ids
/// in ascending order, wraps, and skips ineligible ids; it advances with
/// every selection so duty spreads across the population.
class MonitorRotation {
 public:
  MonitorSet select(std::span<const NodeId> eligible_sorted, NodeId mh, NodeId relay,
                    double window_start, double window_end);

  NodeId cursor() const { return cursor_; }
  void set_cursor(NodeId c) { cursor_ = c; }

 private:
  NodeId cursor_ = 0;
};

/// Digest verification for a forwarded bundle.
ForwardOutcome classify_forward(std::uint64_t expected_digest, const Bundle& forwarded);

ForwardObservation observe_forward(NodeId monitor, NodeId relay, const Bundle& bundle,
                                   ForwardOutcome outcome, double time);

/// Aggregates one monitor's observations of one relay over a closed window.
/// Cooperative needs a match majority and no tampered forward. No
/// observations means no report.
std::optional<Verdict> window_verdict(std::span<const ForwardObservation> observations);

/// Per-window observation store. Observations outside the window bounds are
/// rejected.
class WindowLog {
 public:
  WindowLog() = default;
  WindowLog(int window_id, double start, double end);

  void record(const ForwardObservation& obs);

  int window_id() const { return window_id_; }
  double start() const { return start_; }
  double end() const { return end_; }

  /// Reports for every (monitor, relay) pair with a non-abstaining verdict,
  /// ordered by subject then monitor.
  std::vector<TrustReport> close() const;

  std::span<const ForwardObservation> observations(NodeId monitor, NodeId relay) const;

 private:
  int window_id_ = 0;
  double start_ = 0.0;
  double end_ = 0.0;
  std::map<std::pair<NodeId, NodeId>, std::vector<ForwardObservation>> by_pair_;
};

struct RelayJudgement {
  Verdict verdict = Verdict::Cooperative;
  double cooperative_mass = 0.0;
  double relay_delta = 0.0;
  PunishmentStage relay_stage = PunishmentStage::Clean;
  std::vector<std::pair<NodeId, double>> monitor_deltas;
};

/// Fuses the reports on one relay, pays or punishes the relay through the
/// ledger, then pays every reporting monitor by agreement with the fused
/// verdict. Reputations are the monitors' scores at window open, clamped at
/// zero. Needs at least two reports.
RelayJudgement fuse_and_pay_relay(ledger::ReputationLedger& ledger, NodeId relay,
                                  std::span<const TrustReport> reports,
                                  std::span<const double> monitor_reputations, double p_f,
                                  FusionVariant variant, double time);

/// Monitor payment rule: agreement with the fused verdict earns p_f,
/// disagreement costs p_f.
std::vector<std::pair<NodeId, double>> pay_monitors(std::span<const TrustReport> reports,
                                                    Verdict fused, double p_f);

}  // namespace sos::monitoring
