#include "sos/election.hpp"

#include <algorithm>

#include "sos/weighting.hpp"

namespace sos::election {

bool candidate_precedes(const Candidate& a, const Candidate& b) {
  if (a.weight != b.weight) return a.weight > b.weight;
  if (a.cooperation != b.cooperation) return a.cooperation > b.cooperation;
  return a.id < b.id;
}

const Candidate& ElectionRecord::candidate(NodeId id) const {
  for (const Candidate& c : candidates) {
    if (c.id == id) return c;
  }
  throw std::out_of_range("not a candidate in this record");
}

long ElectionRecord::votes(NodeId id) const {
  auto it = tally.find(id);
  return it == tally.end() ? 0 : it->second;
}

bool ElectionRecord::is_head(NodeId id) const {
  return id == heads.ch || id == heads.mh || id == heads.ih;
}

std::vector<Candidate> nominate(std::vector<Candidate> eligible, std::size_t q) {
  if (eligible.size() < 3) throw QuorumError("nominate: fewer than three eligible nodes");
  if (q < 3) throw QuorumError("nominate: pool size must be at least three");
  std::sort(eligible.begin(), eligible.end(), candidate_precedes);
  if (eligible.size() > q) eligible.resize(q);
  return eligible;
}

std::vector<Candidate> nominate(const World& world,
                                std::span<const std::vector<Bundle>> custody, std::size_t q) {
  std::vector<Candidate> eligible;
  eligible.reserve(world.nodes.size());
  for (const NodeProfile& p : world.nodes) {
    if (p.expelled()) continue;
    std::span<const Bundle> carried =
        p.id < custody.size() ? std::span<const Bundle>(custody[p.id]) : std::span<const Bundle>{};
    Candidate c;
    c.id = p.id;
    c.weight = weighting::composite_weight(weighting::compute_features(world, p.id, carried),
                                           world.weight_coeffs);
    c.cooperation = p.contacts;
    eligible.push_back(c);
  }
  return nominate(std::move(eligible), q);
}

std::map<NodeId, long> cast_votes(const std::vector<Candidate>& nominees,
                                  const std::vector<NodeId>& voters) {
  if (nominees.empty()) throw QuorumError("cast_votes: no nominees");
  std::map<NodeId, long> tally;
  for (const Candidate& c : nominees) tally[c.id] = 0;
  const Candidate* best = &nominees.front();
  for (const Candidate& c : nominees) {
    if (candidate_precedes(c, *best)) best = &c;
  }
  tally[best->id] = static_cast<long>(voters.size());
  return tally;
}

Heads elect(const std::map<NodeId, long>& tally, const std::vector<Candidate>& nominees) {
  if (nominees.size() < 3) throw QuorumError("elect: need at least three nominees");
  std::vector<Candidate> order = nominees;
  std::sort(order.begin(), order.end(), [&](const Candidate& a, const Candidate& b) {
    long va = 0, vb = 0;
    if (auto it = tally.find(a.id); it != tally.end()) va = it->second;
    if (auto it = tally.find(b.id); it != tally.end()) vb = it->second;
    if (va != vb) return va > vb;
    return candidate_precedes(a, b);
  });
  return Heads{order[0].id, order[1].id, order[2].id};
}

std::size_t default_pool_size(std::size_t n) {
  return std::max<std::size_t>(3, (n + 9) / 10);
}

ElectionRecord run_round(const World& world, std::span<const std::vector<Bundle>> custody,
                         int round, std::size_t q) {
  ElectionRecord record;
  record.round = round;
  record.candidates = nominate(world, custody, q);
  for (const NodeProfile& p : world.nodes) {
    if (p.expelled()) continue;
    bool nominee = std::any_of(record.candidates.begin(), record.candidates.end(),
                               [&](const Candidate& c) { return c.id == p.id; });
    if (!nominee) record.voters.push_back(p.id);
  }
  record.tally = cast_votes(record.candidates, record.voters);
  record.heads = elect(record.tally, record.candidates);
  return record;
}

}  // namespace sos::election
