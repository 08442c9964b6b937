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

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "socialmatch/dynamics.hpp"
#include "socialmatch/instance.hpp"
#include "socialmatch/matching.hpp"
#include "socialmatch/oracle.hpp"

namespace socialmatch {

enum class RewardFamily { kProduct, kMinLinear, kPowerProduct };
enum class SplitKind { kEqual, kMatthew, kProportional };
enum class BudgetMode { kAtMost, kExact };

const char* family_name(RewardFamily f);
const char* split_name(SplitKind s);
const char* budget_mode_name(BudgetMode m);

// Product c*x*y, MinLinear c*min(x,y), PowerProduct c*(x*y)^k.
struct RewardFunctionSpec {
  RewardFamily family = RewardFamily::kProduct;
  Rational c = 1;
  int k = 1;  // PowerProduct exponent, 1..16
  SplitKind split = SplitKind::kEqual;

  Rational total(const Rational& x, const Rational& y) const;
  // MinLinear is concave past the kink.
  bool convex() const { return family != RewardFamily::kMinLinear; }
};

// Allocation per edge id: (s of edge.u, s of edge.v).
struct StrategyProfile {
  std::vector<std::pair<Rational, Rational>> alloc;

  friend bool operator==(const StrategyProfile&, const StrategyProfile&) = default;
};

class ContributionGame {
 public:
  // Throws Error(kInvalidArgument) on size mismatches, negative budgets,
  // c <= 0, k outside 1..16, missing or non-positive lambda for Matthew
  // splits, or an Exact-mode node with budget but no incident edge.
  ContributionGame(Graph graph, std::vector<Rational> budgets,
                   std::vector<RewardFunctionSpec> functions, FriendshipVector friendship,
                   BudgetMode mode, std::vector<Rational> lambda = {});

  const Graph& graph() const { return graph_; }
  int num_nodes() const { return graph_.num_nodes(); }
  int num_edges() const { return graph_.num_edges(); }
  const std::vector<Rational>& budgets() const { return budgets_; }
  const Rational& budget(NodeId v) const { return budgets_[v]; }
  const std::vector<RewardFunctionSpec>& functions() const { return functions_; }
  const RewardFunctionSpec& function(EdgeId e) const { return functions_[e]; }
  const FriendshipVector& friendship() const { return friendship_; }
  BudgetMode mode() const { return mode_; }
  const std::vector<Rational>& lambda() const { return lambda_; }
  const Rational& alpha_between(NodeId a, NodeId b) const {
    return friendship_.at(distances_(a, b));
  }
  // Every edge splits equally: both endpoints collect the whole f_e, as in
  // equal sharing. Otherwise an equal split pays f_e / 2 to each side.
  bool correlated() const { return correlated_; }

  // f^x_e at contributions (su, sv) ordered as (edge.u, edge.v).
  Rational endpoint_reward(NodeId x, EdgeId e, const Rational& su,
                           const Rational& sv) const;
  // g^x_e = f^x_e + a1 f^y_e.
  Rational perceived_edge_value(NodeId x, EdgeId e, const Rational& su,
                                const Rational& sv) const;

  bool all_convex() const;
  ContributionGame with_mode(BudgetMode mode) const;

 private:
  Graph graph_;
  std::vector<Rational> budgets_;
  std::vector<RewardFunctionSpec> functions_;
  FriendshipVector friendship_;
  BudgetMode mode_;
  std::vector<Rational> lambda_;
  bool correlated_ = true;
  DistanceMatrix distances_;
};

// Throws Error(kInvalidArgument) unless allocations are nonnegative and each
// node spends at most (AtMost) or exactly (Exact) its budget.
void validate_profile(const ContributionGame& game, const StrategyProfile& profile);

StrategyProfile zero_profile(const ContributionGame& game);
Rational spent(const ContributionGame& game, const StrategyProfile& profile, NodeId v);

// R_v summed over incident edges, and U_v with friendship weights.
std::vector<Rational> node_rewards(const ContributionGame& game,
                                   const StrategyProfile& profile);
Rational perceived_utility(const ContributionGame& game, const StrategyProfile& profile,
                           NodeId v);
// Sum of f_e over edges.
Rational total_reward(const ContributionGame& game, const StrategyProfile& profile);

// r_uv = f_uv(B_u, B_v) with shares f^u(B_u, B_v). All-equal splits give
// equal sharing, all-Matthew gives Matthew(lambda), all-proportional with
// positive budgets gives Matthew(lambda = B); anything else is oblivious
// with the computed shares. Throws Error(kInvalidArgument) if some r_e = 0.
GameInstance corresponding_matching_game(const ContributionGame& game);

// AtMost mode only. Matched nodes put their full budget on the matched edge,
// everyone else allocates nothing. Throws Error(kNotStable) if the matching is
// not stable in the corresponding game.
StrategyProfile matching_to_equilibrium(const ContributionGame& game, const Matching& m);

// Saturates the edges of m; unmatched nodes split their budget equally over
// all incident edges in Exact mode and allocate nothing in AtMost mode.
StrategyProfile saturate_matching(const ContributionGame& game, const Matching& m);

enum class MoveKind {
  kAddFree,         // one node adds free budget to an edge
  kConcentrate,     // one node puts its whole budget on one edge
  kTransfer,        // one node shifts a fraction between two of its edges
  kWithdraw,        // one node removes a fraction from an edge
  kJointCommon,     // a pair adds budget to their common edge
  kJointSplit,      // a pair puts whole budgets on two distinct edges
};

const char* move_name(MoveKind kind);

struct DeviationWitness {
  MoveKind kind = MoveKind::kAddFree;
  std::vector<NodeId> nodes;
  std::vector<EdgeId> edges;  // edges receiving budget
  std::vector<Rational> utility_before;
  std::vector<Rational> utility_after;
  StrategyProfile after;
};

struct EquilibriumVerdict {
  bool equilibrium = true;  // grid-certified
  int grid_k = 8;
  std::uint64_t moves_checked = 0;
  std::optional<DeviationWitness> witness;
};

// Searches unilateral moves (free budget, whole budget, K-grid transfers and
// withdrawals), joint moves of adjacent pairs onto their common edge over the
// K x K grid, and whole-budget moves of any pair onto two distinct edges. The
// first improving move in that order is the witness.
EquilibriumVerdict is_pairwise_equilibrium(const ContributionGame& game,
                                           const StrategyProfile& profile, int grid_k = 8);

// Maximum-weight matching of the corresponding game realised as saturated
// edges.
StrategyProfile tight_social_optimum(const ContributionGame& game, int max_exact_n = 22);

// Exact mode, equal splits and alpha_d = 0 for d >= 2. Edge (u,v) is forbidden
// when u has a pendant neighbor x and v a pendant neighbor y with
//   (1+a) r_uv < (1+a) r_ux + a r_vy  and  (1+a) r_uv < (1+a) r_vy + a r_ux.
std::vector<EdgeId> detect_forbidden_edges(const ContributionGame& game);

struct TightBudgetResult {
  StrategyProfile profile;
  Matching matching;  // in the original graph
  std::vector<EdgeId> forbidden;
  Termination termination = Termination::kStable;
};

// Drops forbidden edges, runs best-relaxed-blocking-pair dynamics on the rest,
// saturates the matched edges and spreads unmatched budgets equally over all
// original incident edges.
TightBudgetResult tight_budget_equilibrium(const ContributionGame& game,
                                           int max_exact_n = 22);

struct CcgEquilibriumEntry {
  std::string source;  // "matching" or "local-search"
  StrategyProfile profile;
  Rational value;
  std::optional<Rational> ratio;  // optimum / value; absent when value is 0
};

struct CcgAuditReport {
  Rational optimum;
  StrategyProfile optimum_profile;
  std::vector<CcgEquilibriumEntry> equilibria;
  std::optional<Rational> worst_ratio;
  std::optional<Rational> Q;  // of the corresponding game
  std::optional<Rational> bound;  // 1 + Q
  bool bound_applicable = false;  // every function convex and Q defined
  bool holds = true;
  std::uint64_t local_search_steps = 0;
};

struct CcgAuditOptions {
  OracleLimits limits;
  int grid_k = 8;
  std::uint64_t local_search_cap = 200;
};

// Certifies equilibria built from every stable matching of the corresponding
// game and one reached by local search along checker witnesses, then compares
// the worst ratio with 1 + Q.
CcgAuditReport ccg_audit(const ContributionGame& game, const CcgAuditOptions& options = {});

}  // namespace socialmatch
