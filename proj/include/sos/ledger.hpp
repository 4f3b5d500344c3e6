#pragma once

#include <map>
#include <span>
#include <vector>

#include "sos/core.hpp"

namespace sos::ledger {

enum class Reason {
  ElectionHead,
  ElectionParticipation,
  RelayPayment,
  MonitorPayment,
  Warning,
  NegativePayment,
  Expulsion,
  RejoinSettlement,
};

const char* to_string(Reason r);

struct LedgerEvent {
  double time = 0.0;
  NodeId node = 0;
  double delta = 0.0;
  Reason reason = Reason::ElectionParticipation;
};

struct RTableEntry {
  double reputation = 0.0;
  int round = 0;
  int community = 0;
};

using RTable = std::map<NodeId, RTableEntry>;

/// Authoritative reputation accounting for one community. Append-only event
/// log; replaying the log reconstructs every balance exactly.
class ReputationLedger {
 public:
  explicit ReputationLedger(std::size_t n_nodes, int community = 0);

  /// Applies a signed delta and records the event. Deltas to expelled nodes
  /// are rejected unless the reason is RejoinSettlement.
  double apply_delta(NodeId node, double delta, Reason reason, double time);

  /// One step down the punishment ladder. First offense warns at zero
  /// delta, the second charges p_f, the third expels. Punishing an expelled
  /// node is a no-op.
  PunishmentStage punish(NodeId node, double p_f, double time);

  /// Settles an expelled node's debt. The payment must cover the full debt;
  /// the node re-enters on probation (Warned), never Clean.
  PunishmentStage rejoin(NodeId node, double payment, double time);

  double reputation(NodeId node) const;
  const PunishmentState& punishment(NodeId node) const;
  bool expelled(NodeId node) const;
  std::size_t size() const { return reputations_.size(); }

  std::span<const LedgerEvent> events() const { return events_; }

  RTable snapshot(int round) const;

  /// Folds an event log into final balances.
  static std::vector<double> replay(std::size_t n_nodes, std::span<const LedgerEvent> events);

 private:
  void check_node(NodeId node) const;

  int community_;
  std::vector<double> reputations_;
  std::vector<PunishmentState> punishments_;
  std::vector<LedgerEvent> events_;
};

/// Freshness merge of two reputation tables: the newer round wins, equal
/// rounds keep the local entry, unknown nodes are copied.
RTable gateway_sync(const RTable& local, const RTable& remote);

}  // namespace sos::ledger
