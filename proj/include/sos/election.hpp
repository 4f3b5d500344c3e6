#pragma once

#include <map>
#include <span>
#include <vector>

#include "sos/core.hpp"

namespace sos::election {

struct Candidate {
  NodeId id = 0;
  double weight = 0.0;
  long cooperation = 0;
};

/// Ranking used everywhere a candidate order is needed: weight first, then
/// cooperation breaks weight ties, then the lower id.
bool candidate_precedes(const Candidate& a, const Candidate& b);

struct Heads {
  NodeId ch = 0;
  NodeId mh = 0;
  NodeId ih = 0;
};

struct ElectionRecord {
  int round = 0;
  std::vector<Candidate> candidates;  // nominees in rank order
  std::vector<NodeId> voters;         // eligible voters, ascending id
  std::map<NodeId, long> tally;       // nominee id -> votes (zero-filled)
  Heads heads{};

  const Candidate& candidate(NodeId id) const;
  long votes(NodeId id) const;
  bool is_head(NodeId id) const;
};

/// Top q eligible candidates in rank order. Throws QuorumError when fewer
/// than three candidates are available or q < 3.
std::vector<Candidate> nominate(std::vector<Candidate> eligible, std::size_t q);

/// Convenience overload computing weights and cooperation from the world
/// snapshot; custody[i] holds the bundles carried by node i. Expelled nodes
/// are not eligible.
std::vector<Candidate> nominate(const World& world,
                                std::span<const std::vector<Bundle>> custody, std::size_t q);

/// Every voter backs the nominee ranked first. The returned tally has an
/// entry per nominee and its values sum to voters.size().
std::map<NodeId, long> cast_votes(const std::vector<Candidate>& nominees,
                                  const std::vector<NodeId>& voters);

/// Top three by (votes, weight, cooperation, id). Throws QuorumError when
/// fewer than three nominees stand.
Heads elect(const std::map<NodeId, long>& tally, const std::vector<Candidate>& nominees);

/// Default nominee pool size: max(3, ceil(n/10)).
std::size_t default_pool_size(std::size_t n);

/// Full round over a world snapshot: nominate, vote, elect. Does not touch
/// node roles; the caller applies the outcome.
ElectionRecord run_round(const World& world, std::span<const std::vector<Bundle>> custody,
                         int round, std::size_t q);

}  // namespace sos::election
