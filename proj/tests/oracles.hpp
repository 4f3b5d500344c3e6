// Test-side oracles, written independently of the library internals they
// check: dense-array enumeration for Dempster's rule, a per-voter scan for
// tallies, and a from-scratch payment evaluation for the VCG layer.
#pragma once

#include <map>
#include <vector>

#include "sos/election.hpp"
#include "sos/fusion.hpp"
#include "sos/rng.hpp"

namespace oracles {

inline sos::fusion::Bpa ds_oracle(const sos::fusion::Bpa& b1, const sos::fusion::Bpa& b2) {
  const unsigned f = b1.frame_size();
  const sos::fusion::Mask full = (sos::fusion::Mask{1} << f) - 1;
  std::vector<double> m1(full + 1, 0.0), m2(full + 1, 0.0), combined(full + 1, 0.0);
  for (sos::fusion::Mask a = 0; a <= full; ++a) {
    m1[a] = b1.mass(a);
    m2[a] = b2.mass(a);
  }
  double conflict = 0.0;
  for (sos::fusion::Mask a = 0; a <= full; ++a) {
    for (sos::fusion::Mask b = 0; b <= full; ++b) {
      const double p = m1[a] * m2[b];
      if (p == 0.0) continue;
      const sos::fusion::Mask c = a & b;
      if (c == 0) {
        conflict += p;
      } else {
        combined[c] += p;
      }
    }
  }
  sos::fusion::Bpa out(f);
  for (sos::fusion::Mask c = 1; c <= full; ++c) {
    if (combined[c] != 0.0) out.set(c, combined[c] / (1.0 - conflict));
  }
  return out;
}

/// Random BPA whose mass spreads over a random subset of the non-empty
/// subsets of the frame.
inline sos::fusion::Bpa random_bpa(sos::Rng& rng, unsigned frame_size) {
  const sos::fusion::Mask full = (sos::fusion::Mask{1} << frame_size) - 1;
  std::vector<sos::fusion::Mask> focal;
  for (sos::fusion::Mask m = 1; m <= full; ++m) {
    if (rng.uniform() < 0.6) focal.push_back(m);
  }
  if (focal.empty()) focal.push_back(full);
  std::vector<double> weights(focal.size());
  double total = 0;
  for (double& w : weights) {
    w = rng.uniform() + 1e-3;
    total += w;
  }
  sos::fusion::Bpa out(frame_size);
  for (std::size_t i = 0; i < focal.size(); ++i) out.set(focal[i], weights[i] / total);
  return out;
}

/// Per-voter argmax scan; the library computes the same tally in one shot.
inline std::map<sos::NodeId, long> vote_oracle(const std::vector<sos::election::Candidate>& noms,
                                               const std::vector<sos::NodeId>& voters) {
  std::map<sos::NodeId, long> tally;
  for (const auto& c : noms) tally[c.id] = 0;
  for (sos::NodeId voter : voters) {
    (void)voter;
    const sos::election::Candidate* best = nullptr;
    for (const auto& c : noms) {
      if (best == nullptr) {
        best = &c;
        continue;
      }
      const bool wins = c.weight > best->weight ||
                        (c.weight == best->weight && c.cooperation > best->cooperation) ||
                        (c.weight == best->weight && c.cooperation == best->cooperation &&
                         c.id < best->id);
      if (wins) best = &c;
    }
    tally[best->id] += 1;
  }
  return tally;
}

struct VcgOracleResult {
  double psi = 0.0;
  double p_m = 0.0;
  double c_s = 0.0;
  double r_p = 0.0;
};

/// Recomputes the whole payment chain for candidate x from first
/// principles: factual and counterfactual tallies by per-voter scan, then
/// the payment formulas evaluated longhand.
inline VcgOracleResult vcg_oracle(const std::vector<sos::election::Candidate>& noms,
                                  const std::vector<sos::NodeId>& voters, sos::NodeId x,
                                  double f_b) {
  VcgOracleResult r;
  const auto factual = vote_oracle(noms, voters);
  const long votes_x = factual.at(x);
  if (votes_x == 0) return r;  // no payment without votes

  std::vector<sos::election::Candidate> without_x;
  double w_x = 0;
  for (const auto& c : noms) {
    if (c.id == x) {
      w_x = c.weight;
    } else {
      without_x.push_back(c);
    }
  }
  double counterfactual_sum = 0;
  if (!without_x.empty()) {
    const auto cf = vote_oracle(without_x, voters);
    for (const auto& c : without_x) {
      counterfactual_sum += c.weight * static_cast<double>(cf.at(c.id));
    }
  }
  double factual_sum = 0;
  for (const auto& c : noms) {
    if (c.id != x) factual_sum += c.weight * static_cast<double>(factual.at(c.id));
  }
  r.psi = w_x + (counterfactual_sum - factual_sum) / static_cast<double>(votes_x);
  r.p_m = static_cast<double>(votes_x) * f_b * r.psi;

  double first = -1, second = -1;
  for (const auto& c : noms) {
    if (c.weight > first) {
      second = first;
      first = c.weight;
    } else if (c.weight > second) {
      second = c.weight;
    }
  }
  r.c_s = (std::abs(first - second) / w_x) * static_cast<double>(votes_x) * f_b * r.psi;
  r.r_p = r.p_m - r.c_s;
  return r;
}

}  // namespace oracles
