#include "sos/ledger.hpp"

namespace sos::ledger {

const char* to_string(Reason r) {
  switch (r) {
    case Reason::ElectionHead: return "election_head";
    case Reason::ElectionParticipation: return "election_participation";
    case Reason::RelayPayment: return "relay_payment";
    case Reason::MonitorPayment: return "monitor_payment";
    case Reason::Warning: return "warning";
    case Reason::NegativePayment: return "negative_payment";
    case Reason::Expulsion: return "expulsion";
    case Reason::RejoinSettlement: return "rejoin_settlement";
  }
  return "unknown";
}

ReputationLedger::ReputationLedger(std::size_t n_nodes, int community)
    : community_(community), reputations_(n_nodes, 0.0), punishments_(n_nodes) {}

void ReputationLedger::check_node(NodeId node) const {
  if (node >= reputations_.size()) throw std::out_of_range("ledger: unknown node id");
}

double ReputationLedger::apply_delta(NodeId node, double delta, Reason reason, double time) {
  check_node(node);
  if (punishments_[node].stage == PunishmentStage::Expelled &&
      reason != Reason::RejoinSettlement) {
    throw LedgerError("apply_delta: node is expelled");
  }
  reputations_[node] += delta;
  events_.push_back({time, node, delta, reason});
  return reputations_[node];
}

PunishmentStage ReputationLedger::punish(NodeId node, double p_f, double time) {
  check_node(node);
  PunishmentState& state = punishments_[node];
  switch (state.stage) {
    case PunishmentStage::Clean:
      state.stage = PunishmentStage::Warned;
      state.offense_count += 1;
      apply_delta(node, 0.0, Reason::Warning, time);
      break;
    case PunishmentStage::Warned:
      state.stage = PunishmentStage::NegativePaid;
      state.offense_count += 1;
      state.debt += p_f;
      apply_delta(node, -p_f, Reason::NegativePayment, time);
      break;
    case PunishmentStage::NegativePaid:
      state.offense_count += 1;
      apply_delta(node, 0.0, Reason::Expulsion, time);
      state.stage = PunishmentStage::Expelled;
      break;
    case PunishmentStage::Expelled:
      // repeated punishment of an expelled node leaves no trace in the log
      break;
  }
  return state.stage;
}

PunishmentStage ReputationLedger::rejoin(NodeId node, double payment, double time) {
  check_node(node);
  PunishmentState& state = punishments_[node];
  if (state.stage != PunishmentStage::Expelled) {
    throw LedgerError("rejoin: node is not expelled");
  }
  if (payment < state.debt) {
    throw LedgerError("rejoin: payment does not cover the outstanding debt");
  }
  apply_delta(node, payment, Reason::RejoinSettlement, time);
  state.debt = 0.0;
  state.stage = PunishmentStage::Warned;
  return state.stage;
}

double ReputationLedger::reputation(NodeId node) const {
  check_node(node);
  return reputations_[node];
}

const PunishmentState& ReputationLedger::punishment(NodeId node) const {
  check_node(node);
  return punishments_[node];
}

bool ReputationLedger::expelled(NodeId node) const {
  check_node(node);
  return punishments_[node].stage == PunishmentStage::Expelled;
}

RTable ReputationLedger::snapshot(int round) const {
  RTable table;
  for (NodeId id = 0; id < reputations_.size(); ++id) {
    table[id] = RTableEntry{reputations_[id], round, community_};
  }
  return table;
}

std::vector<double> ReputationLedger::replay(std::size_t n_nodes,
                                             std::span<const LedgerEvent> events) {
  std::vector<double> balances(n_nodes, 0.0);
  for (const LedgerEvent& e : events) {
    if (e.node >= n_nodes) throw std::out_of_range("replay: unknown node id");
    balances[e.node] += e.delta;
  }
  return balances;
}

RTable gateway_sync(const RTable& local, const RTable& remote) {
  RTable merged = local;
  for (const auto& [id, entry] : remote) {
    auto it = merged.find(id);
    if (it == merged.end()) {
      merged[id] = entry;
    } else if (entry.round > it->second.round) {
      it->second = entry;
    }
    // equal or older rounds keep the local entry
  }
  return merged;
}

}  // namespace sos::ledger
