#include "sos/vcg.hpp"

#include <algorithm>
#include <cmath>

namespace sos::vcg {

namespace {

using election::Candidate;
using election::ElectionRecord;

std::pair<double, double> top_two_weights(const std::vector<Candidate>& candidates) {
  if (candidates.size() < 2) {
    throw DegenerateInputError("cost_share: need at least two candidates");
  }
  double first = -1.0, second = -1.0;
  for (const Candidate& c : candidates) {
    if (c.weight > first) {
      second = first;
      first = c.weight;
    } else if (c.weight > second) {
      second = c.weight;
    }
  }
  return {first, second};
}

}  // namespace

double member_payment_psi(const ElectionRecord& record, NodeId x) {
  const long votes_x = record.votes(x);
  if (votes_x <= 0) throw DegenerateInputError("psi: candidate received no votes");

  // Rerun the vote among the remaining nominees to price x's externality.
  std::vector<Candidate> rest;
  rest.reserve(record.candidates.size());
  for (const Candidate& c : record.candidates) {
    if (c.id != x) rest.push_back(c);
  }
  double counterfactual = 0.0;
  if (!rest.empty()) {
    auto tally_without_x = election::cast_votes(rest, record.voters);
    for (const Candidate& c : rest) {
      counterfactual += c.weight * static_cast<double>(tally_without_x.at(c.id));
    }
  }
  double factual = 0.0;
  for (const Candidate& c : record.candidates) {
    if (c.id == x) continue;
    factual += c.weight * static_cast<double>(record.votes(c.id));
  }
  const double w_x = record.candidate(x).weight;
  return w_x + (counterfactual - factual) / static_cast<double>(votes_x);
}

double head_payment(const ElectionRecord& record, NodeId x, double f_b) {
  if (f_b <= 0) throw ConfigError("f_b: must be positive");
  if (!record.is_head(x)) throw RoleError("head_payment: node is not an elected head");
  const long votes_x = record.votes(x);
  if (votes_x == 0) return 0.0;
  return static_cast<double>(votes_x) * f_b * member_payment_psi(record, x);
}

double cost_share(const ElectionRecord& record, NodeId x, double f_b) {
  const double w_x = record.candidate(x).weight;
  if (w_x <= 0) throw DegenerateInputError("cost_share: candidate weight must be positive");
  const long votes_x = record.votes(x);
  if (votes_x == 0) return 0.0;
  auto [first, second] = top_two_weights(record.candidates);
  const double gap = std::abs(first - second);
  return (gap / w_x) * static_cast<double>(votes_x) * f_b * member_payment_psi(record, x);
}

double reputation_delta(double p_m, double c_s) { return p_m - c_s; }

PaymentBreakdown head_breakdown(const ElectionRecord& record, NodeId x, double f_b) {
  PaymentBreakdown b;
  b.node = x;
  b.p_m = head_payment(record, x, f_b);
  b.psi = record.votes(x) > 0 ? member_payment_psi(record, x) : 0.0;
  b.c_s = cost_share(record, x, f_b);
  b.r_p = reputation_delta(b.p_m, b.c_s);
  return b;
}

std::vector<std::pair<NodeId, double>> participation_payment(const ElectionRecord& record,
                                                             double f_b) {
  std::vector<std::pair<NodeId, double>> credits;
  credits.reserve(record.voters.size());
  for (NodeId voter : record.voters) {
    credits.emplace_back(voter, f_b);
  }
  return credits;
}

}  // namespace sos::vcg
