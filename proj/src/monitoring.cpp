#include "sos/monitoring.hpp"

#include <algorithm>

namespace sos::monitoring {

bool MonitorSet::contains(NodeId id) const {
  if (head_present && id == head) return true;
  return std::find(assistants.begin(), assistants.end(), id) != assistants.end();
}

std::vector<NodeId> MonitorSet::members() const {
  std::vector<NodeId> all;
  if (head_present) all.push_back(head);
  all.insert(all.end(), assistants.begin(), assistants.end());
  return all;
}

MonitorSet MonitorRotation::select(std::span<const NodeId> eligible_sorted, NodeId mh,
                                   NodeId relay, double window_start, double window_end) {
  MonitorSet set;
  set.head = mh;
  set.head_present = mh != relay;
  set.window_start = window_start;
  set.window_end = window_end;

  std::vector<NodeId> pool;
  pool.reserve(eligible_sorted.size());
  for (NodeId id : eligible_sorted) {
    if (id == mh || id == relay) continue;
    pool.push_back(id);
  }
  const std::size_t want = 3;
  if (!pool.empty()) {
    // first pool position at or after the cursor, wrapping
    auto it = std::lower_bound(pool.begin(), pool.end(), cursor_);
    std::size_t start = static_cast<std::size_t>(it - pool.begin()) % pool.size();
    const std::size_t take = std::min(want, pool.size());
    for (std::size_t k = 0; k < take; ++k) {
      set.assistants.push_back(pool[(start + k) % pool.size()]);
    }
    cursor_ = pool[(start + take) % pool.size()];
  }
  set.degraded = !set.head_present || set.assistants.size() < want;
  return set;
}

ForwardOutcome classify_forward(std::uint64_t expected_digest, const Bundle& forwarded) {
  return bundle_digest(forwarded) == expected_digest ? ForwardOutcome::ForwardedMatch
                                                     : ForwardOutcome::ForwardedMismatch;
}

ForwardObservation observe_forward(NodeId monitor, NodeId relay, const Bundle& bundle,
                                   ForwardOutcome outcome, double time) {
  return ForwardObservation{monitor, relay, bundle.bundle_id, bundle.digest, outcome, time};
}

std::optional<Verdict> window_verdict(std::span<const ForwardObservation> observations) {
  if (observations.empty()) return std::nullopt;
  std::size_t matches = 0;
  for (const ForwardObservation& obs : observations) {
    if (obs.observed == ForwardOutcome::ForwardedMismatch) return Verdict::Selfish;
    if (obs.observed == ForwardOutcome::ForwardedMatch) ++matches;
  }
  const bool majority = 2 * matches >= observations.size();
  return majority ? Verdict::Cooperative : Verdict::Selfish;
}

WindowLog::WindowLog(int window_id, double start, double end)
    : window_id_(window_id), start_(start), end_(end) {}

void WindowLog::record(const ForwardObservation& obs) {
  if (obs.time < start_ || obs.time >= end_) {
    throw WindowError("observation outside the monitoring window");
  }
  by_pair_[{obs.monitor, obs.relay}].push_back(obs);
}

std::vector<TrustReport> WindowLog::close() const {
  std::vector<TrustReport> reports;
  for (const auto& [key, observations] : by_pair_) {
    auto verdict = window_verdict(observations);
    if (!verdict) continue;
    reports.push_back({key.first, key.second, *verdict, window_id_});
  }
  std::sort(reports.begin(), reports.end(), [](const TrustReport& a, const TrustReport& b) {
    if (a.subject != b.subject) return a.subject < b.subject;
    return a.monitor < b.monitor;
  });
  return reports;
}

std::span<const ForwardObservation> WindowLog::observations(NodeId monitor, NodeId relay) const {
  auto it = by_pair_.find({monitor, relay});
  if (it == by_pair_.end()) return {};
  return it->second;
}

RelayJudgement fuse_and_pay_relay(ledger::ReputationLedger& ledger, NodeId relay,
                                  std::span<const TrustReport> reports,
                                  std::span<const double> monitor_reputations, double p_f,
                                  FusionVariant variant, double time) {
  if (reports.size() < 2) {
    throw DegenerateInputError("fuse_and_pay_relay: need at least two reports");
  }
  if (reports.size() != monitor_reputations.size()) {
    throw DegenerateInputError("fuse_and_pay_relay: one reputation per report required");
  }

  std::vector<double> clamped(monitor_reputations.begin(), monitor_reputations.end());
  for (double& r : clamped) r = std::max(0.0, r);
  auto importance = fusion::importance_factors(clamped);

  std::vector<std::pair<Verdict, fusion::ImportanceFactor>> evidence;
  evidence.reserve(reports.size());
  for (std::size_t i = 0; i < reports.size(); ++i) {
    evidence.emplace_back(reports[i].verdict, importance.factors[i]);
  }
  const fusion::Bpa fused = fusion::cif_fuse(evidence, variant);
  const Verdict verdict = fusion::classify(fused);

  RelayJudgement judgement;
  judgement.verdict = verdict;
  judgement.cooperative_mass = fused.mass(fusion::kCooperative);

  if (verdict == Verdict::Cooperative) {
    if (!ledger.expelled(relay)) {
      ledger.apply_delta(relay, p_f, ledger::Reason::RelayPayment, time);
      judgement.relay_delta = p_f;
    }
    judgement.relay_stage = ledger.punishment(relay).stage;
  } else {
    const PunishmentStage before = ledger.punishment(relay).stage;
    judgement.relay_stage = ledger.punish(relay, p_f, time);
    judgement.relay_delta = before == PunishmentStage::Warned ? -p_f : 0.0;
  }

  judgement.monitor_deltas = pay_monitors(reports, verdict, p_f);
  for (const auto& [monitor, delta] : judgement.monitor_deltas) {
    if (!ledger.expelled(monitor)) {
      ledger.apply_delta(monitor, delta, ledger::Reason::MonitorPayment, time);
    }
  }
  return judgement;
}

std::vector<std::pair<NodeId, double>> pay_monitors(std::span<const TrustReport> reports,
                                                    Verdict fused, double p_f) {
  std::vector<std::pair<NodeId, double>> deltas;
  deltas.reserve(reports.size());
  for (const TrustReport& r : reports) {
    deltas.emplace_back(r.monitor, r.verdict == fused ? p_f : -p_f);
  }
  return deltas;
}

}  // namespace sos::monitoring
