// Copyright 2026 The socialmatch Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "socialmatch/instance.hpp"

namespace socialmatch {

// A set of disjoint edges, stored as a symmetric partner array.
class Matching {
 public:
  Matching() = default;
  explicit Matching(int num_nodes) : partner_(num_nodes, -1) {}

  // Validates that every pair is an edge of the graph and no node repeats.
  static Matching from_pairs(const Graph& graph,
                             const std::vector<std::pair<NodeId, NodeId>>& pairs);

  int num_nodes() const { return static_cast<int>(partner_.size()); }
  std::optional<NodeId> partner(NodeId v) const {
    if (partner_[v] < 0) return std::nullopt;
    return partner_[v];
  }
  bool is_matched(NodeId v) const { return partner_[v] >= 0; }
  bool contains(NodeId a, NodeId b) const { return partner_[a] == b; }

  // Caller guarantees both endpoints are free.
  void add(NodeId a, NodeId b) {
    partner_[a] = b;
    partner_[b] = a;
  }
  // Unmatches v and its partner, if any.
  void remove(NodeId v) {
    if (partner_[v] >= 0) partner_[partner_[v]] = -1;
    partner_[v] = -1;
  }

  // Matched pairs (a < b) sorted lexicographically.
  std::vector<std::pair<NodeId, NodeId>> pairs() const;
  int size() const;

  friend bool operator==(const Matching&, const Matching&) = default;
  // Canonical order: lexicographic over pairs().
  friend bool operator<(const Matching& a, const Matching& b) {
    return a.pairs() < b.pairs();
  }

 private:
  std::vector<NodeId> partner_;
};

// Edge id that v is matched along, if matched.
std::optional<EdgeId> matched_edge(const GameInstance& inst, const Matching& m,
                                   NodeId v);

struct UtilityProfile {
  std::vector<Rational> reward;
  std::vector<Rational> perceived;
};

// R_v: payoff from v's matched edge, zero when unmatched.
Rational node_reward(const GameInstance& inst, const Matching& m, NodeId v);

// U_v = R_v + sum over u != v of alpha_{d(u,v)} R_u.
Rational perceived_utility(const GameInstance& inst, const Matching& m, NodeId v);

UtilityProfile utility_profile(const GameInstance& inst, const Matching& m);

// Sum of r_e over matched edges. Identical for every sharing rule, so
// efficiency ratios are comparable across rules.
Rational matching_value(const GameInstance& inst, const Matching& m);

enum class DeviationKind { kSwivel, kBiswivel, kRelaxedBiswivel };

const char* deviation_name(DeviationKind kind);

// Pair (u, v) matches each other after dropping their current edges.
struct Deviation {
  DeviationKind kind = DeviationKind::kSwivel;
  NodeId u = 0;
  NodeId v = 0;
  std::vector<Edge> removed;  // at most two, all in the pre-deviation matching
  Edge added;
};

// Builds the deviation of (u,v) from m. Kind is kSwivel if either node is
// free, otherwise kBiswivel (or kRelaxedBiswivel when `relaxed`).
Deviation make_deviation(const GameInstance& inst, const Matching& m, NodeId u,
                         NodeId v, bool relaxed = false);

// Throws Error(kStaleDeviation) if the deviation does not fit m.
Matching apply_deviation(const Matching& m, const Deviation& dev);

// One side of an improvement test: the node strictly gains iff lhs > rhs.
struct SideWitness {
  NodeId node = 0;
  Rational lhs;  // perceived gain from the new edge
  Rational rhs;  // perceived loss from the broken edges
  bool improves() const { return lhs > rhs; }
};

struct PairVerdict {
  bool blocking = false;
  DeviationKind kind = DeviationKind::kSwivel;
  SideWitness u_side;
  SideWitness v_side;
};

// Exact test of whether (u,v) is an improving pair. The two sides are
// written in q-form over payoffs:
//   q^u_{uv} > [u-w] q^u_{uw} + [v-z] (a1 p^v_{vz} + a_{uz} p^z_{vz})
// and symmetrically for v. Under equal sharing this is the correlated form
// (1+a1) r_uv > (1+a1) r_uw + (a1 + a_uz) r_vz.
// Throws Error(kInvalidArgument) when (u,v) is not an edge. Already-matched
// pairs are never blocking.
PairVerdict is_improving_pair(const GameInstance& inst, const Matching& m,
                              NodeId u, NodeId v);

// As above but with alpha_2 in place of a_uz and a_vw when both endpoints
// are matched. Every blocking pair is relaxed blocking.
PairVerdict is_relaxed_blocking_pair(const GameInstance& inst, const Matching& m,
                                     NodeId u, NodeId v);

struct StabilityReport {
  bool stable = true;
  std::vector<std::pair<NodeId, NodeId>> blocking_pairs;
};

// Exhaustive scan over all edges.
StabilityReport check_stability(const GameInstance& inst, const Matching& m);

// Early-exit variant.
bool is_stable(const GameInstance& inst, const Matching& m);

// No relaxed blocking pair exists.
bool is_relaxed_stable(const GameInstance& inst, const Matching& m);

}  // namespace socialmatch
