#pragma once

#include <utility>
#include <vector>

#include "sos/election.hpp"

namespace sos::vcg {

struct PaymentBreakdown {
  NodeId node = 0;
  double p_m = 0.0;  // gross payment
  double psi = 0.0;  // per-member payment
  double c_s = 0.0;  // cost share
  double r_p = 0.0;  // net reputation delta, p_m - c_s
};

/// Per-member payment: the candidate's weight plus its per-vote externality
/// on the others, measured against the tally of the election rerun without
/// the candidate. Throws DegenerateInputError when the candidate received
/// no votes.
double member_payment_psi(const election::ElectionRecord& record, NodeId x);

/// Gross head payment: votes(x) * f_b * psi(x). Zero when the head received
/// no votes. Throws RoleError when x is not an elected head.
double head_payment(const election::ElectionRecord& record, NodeId x, double f_b);

/// Cost charged to x: |top weight - second weight| / W_x, scaled by the
/// head payment. The absolute gap keeps the cost non-negative. Zero when x
/// received no votes.
double cost_share(const election::ElectionRecord& record, NodeId x, double f_b);

double reputation_delta(double p_m, double c_s);

PaymentBreakdown head_breakdown(const election::ElectionRecord& record, NodeId x, double f_b);

/// Fixed credit f_b for every voter. Heads are paid through head_breakdown
/// instead and never appear here.
std::vector<std::pair<NodeId, double>> participation_payment(
    const election::ElectionRecord& record, double f_b);

}  // namespace sos::vcg
