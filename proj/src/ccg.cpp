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

#include "socialmatch/ccg.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "socialmatch/error.hpp"

namespace socialmatch {
namespace {

[[noreturn]] void invalid(const std::string& what) {
  throw Error(ErrorCode::kInvalidArgument, what);
}

Rational power(const Rational& base, int k) {
  Rational out = 1;
  for (int i = 0; i < k; ++i) out *= base;
  return out;
}

}  // namespace

const char* family_name(RewardFamily f) {
  switch (f) {
    case RewardFamily::kProduct: return "product";
    case RewardFamily::kMinLinear: return "min";
    case RewardFamily::kPowerProduct: return "powprod";
  }
  return "?";
}

const char* split_name(SplitKind s) {
  switch (s) {
    case SplitKind::kEqual: return "equal";
    case SplitKind::kMatthew: return "matthew";
    case SplitKind::kProportional: return "proportional";
  }
  return "?";
}

const char* budget_mode_name(BudgetMode m) {
  return m == BudgetMode::kAtMost ? "atmost" : "exact";
}

const char* move_name(MoveKind kind) {
  switch (kind) {
    case MoveKind::kAddFree: return "add-free";
    case MoveKind::kConcentrate: return "concentrate";
    case MoveKind::kTransfer: return "transfer";
    case MoveKind::kWithdraw: return "withdraw";
    case MoveKind::kJointCommon: return "joint-common";
    case MoveKind::kJointSplit: return "joint-split";
  }
  return "?";
}

Rational RewardFunctionSpec::total(const Rational& x, const Rational& y) const {
  switch (family) {
    case RewardFamily::kProduct: return c * x * y;
    case RewardFamily::kMinLinear: return c * (x < y ? x : y);
    case RewardFamily::kPowerProduct: return c * power(x * y, k);
  }
  return 0;
}

ContributionGame::ContributionGame(Graph graph, std::vector<Rational> budgets,
                                   std::vector<RewardFunctionSpec> functions,
                                   FriendshipVector friendship, BudgetMode mode,
                                   std::vector<Rational> lambda)
    : graph_(std::move(graph)),
      budgets_(std::move(budgets)),
      functions_(std::move(functions)),
      friendship_(std::move(friendship)),
      mode_(mode),
      lambda_(std::move(lambda)) {
  const int n = graph_.num_nodes();
  if (static_cast<int>(budgets_.size()) != n) invalid("one budget per node required");
  if (static_cast<int>(functions_.size()) != graph_.num_edges())
    invalid("one reward function per edge required");
  for (NodeId v = 0; v < n; ++v) {
    if (budgets_[v] < 0) invalid("budget of node " + std::to_string(v) + " is negative");
    if (mode_ == BudgetMode::kExact && budgets_[v] > 0 && graph_.degree(v) == 0)
      invalid("node " + std::to_string(v) +
              " has a budget to spend but no incident edge (exact mode)");
  }
  bool needs_lambda = false;
  for (const auto& f : functions_) {
    if (f.c <= 0) invalid("reward coefficient c must be positive");
    if (f.family == RewardFamily::kPowerProduct && (f.k < 1 || f.k > 16))
      invalid("power-product exponent must lie in 1..16");
    needs_lambda = needs_lambda || f.split == SplitKind::kMatthew;
  }
  if (needs_lambda) {
    if (static_cast<int>(lambda_.size()) != n)
      invalid("matthew split needs a brand value for every node");
    for (const auto& l : lambda_)
      if (l <= 0) invalid("brand values must be positive");
  }
  correlated_ = std::all_of(functions_.begin(), functions_.end(), [](const RewardFunctionSpec& f) {
    return f.split == SplitKind::kEqual;
  });
  distances_ = build_distances(graph_);
}

Rational ContributionGame::endpoint_reward(NodeId x, EdgeId e, const Rational& su,
                                           const Rational& sv) const {
  const Edge& ed = graph_.edge(e);
  if (!ed.has(x))
    throw Error(ErrorCode::kNotIncident, "node " + std::to_string(x) +
                                             " is not an endpoint of edge " +
                                             std::to_string(e));
  const RewardFunctionSpec& f = functions_[e];
  Rational total = f.total(su, sv);
  switch (f.split) {
    case SplitKind::kEqual:
      return correlated_ ? total : total / 2;
    case SplitKind::kMatthew: {
      const Rational& lx = lambda_[x];
      return lx / (lambda_[ed.u] + lambda_[ed.v]) * total;
    }
    case SplitKind::kProportional: {
      Rational sum = su + sv;
      if (sum == 0) return 0;
      return (x == ed.u ? su : sv) / sum * total;
    }
  }
  return 0;
}

Rational ContributionGame::perceived_edge_value(NodeId x, EdgeId e, const Rational& su,
                                                const Rational& sv) const {
  NodeId y = graph_.edge(e).other(x);
  return endpoint_reward(x, e, su, sv) +
         friendship_.alpha1() * endpoint_reward(y, e, su, sv);
}

bool ContributionGame::all_convex() const {
  return std::all_of(functions_.begin(), functions_.end(),
                     [](const RewardFunctionSpec& f) { return f.convex(); });
}

ContributionGame ContributionGame::with_mode(BudgetMode mode) const {
  ContributionGame copy = *this;
  copy.mode_ = mode;
  return copy;
}

Rational spent(const ContributionGame& game, const StrategyProfile& profile, NodeId v) {
  Rational total = 0;
  for (EdgeId e : game.graph().incident(v)) {
    const auto& [su, sv] = profile.alloc[e];
    total += game.graph().edge(e).u == v ? su : sv;
  }
  return total;
}

void validate_profile(const ContributionGame& game, const StrategyProfile& profile) {
  if (static_cast<int>(profile.alloc.size()) != game.num_edges())
    invalid("profile needs one allocation per edge");
  for (EdgeId e = 0; e < game.num_edges(); ++e)
    if (profile.alloc[e].first < 0 || profile.alloc[e].second < 0)
      invalid("negative allocation on edge " + std::to_string(e));
  for (NodeId v = 0; v < game.num_nodes(); ++v) {
    Rational s = spent(game, profile, v);
    if (s > game.budget(v))
      invalid("node " + std::to_string(v) + " spends more than its budget");
    if (game.mode() == BudgetMode::kExact && s != game.budget(v))
      invalid("node " + std::to_string(v) + " must spend exactly its budget");
  }
}

StrategyProfile zero_profile(const ContributionGame& game) {
  StrategyProfile p;
  p.alloc.assign(game.num_edges(), {Rational(0), Rational(0)});
  return p;
}

std::vector<Rational> node_rewards(const ContributionGame& game,
                                   const StrategyProfile& profile) {
  std::vector<Rational> R(game.num_nodes(), Rational(0));
  for (EdgeId e = 0; e < game.num_edges(); ++e) {
    const Edge& ed = game.graph().edge(e);
    const auto& [su, sv] = profile.alloc[e];
    R[ed.u] += game.endpoint_reward(ed.u, e, su, sv);
    R[ed.v] += game.endpoint_reward(ed.v, e, su, sv);
  }
  return R;
}

Rational perceived_utility(const ContributionGame& game, const StrategyProfile& profile,
                           NodeId v) {
  auto R = node_rewards(game, profile);
  Rational total = R[v];
  for (NodeId u = 0; u < game.num_nodes(); ++u)
    if (u != v) total += game.alpha_between(v, u) * R[u];
  return total;
}

Rational total_reward(const ContributionGame& game, const StrategyProfile& profile) {
  Rational total = 0;
  for (EdgeId e = 0; e < game.num_edges(); ++e)
    total += game.function(e).total(profile.alloc[e].first, profile.alloc[e].second);
  return total;
}

GameInstance corresponding_matching_game(const ContributionGame& game) {
  const Graph& g = game.graph();
  const int m = g.num_edges();
  std::vector<Rational> rewards(m);
  std::vector<std::pair<Rational, Rational>> shares(m);
  bool all_equal = true, all_matthew = true, all_proportional = true;
  for (EdgeId e = 0; e < m; ++e) {
    const Edge& ed = g.edge(e);
    const Rational& bu = game.budget(ed.u);
    const Rational& bv = game.budget(ed.v);
    rewards[e] = game.function(e).total(bu, bv);
    if (rewards[e] <= 0)
      invalid("edge (" + std::to_string(ed.u) + "," + std::to_string(ed.v) +
              ") has zero reward at full budgets");
    shares[e] = {game.endpoint_reward(ed.u, e, bu, bv),
                 game.endpoint_reward(ed.v, e, bu, bv)};
    SplitKind s = game.function(e).split;
    all_equal = all_equal && s == SplitKind::kEqual;
    all_matthew = all_matthew && s == SplitKind::kMatthew;
    all_proportional = all_proportional && s == SplitKind::kProportional;
  }
  bool budgets_positive = std::all_of(game.budgets().begin(), game.budgets().end(),
                                      [](const Rational& b) { return b > 0; });
  SharingRule rule;
  if (all_equal) {
    rule = SharingRule::equal();
  } else if (all_matthew && m > 0) {
    rule = SharingRule::matthew(game.lambda());
  } else if (all_proportional && m > 0 && budgets_positive) {
    rule = SharingRule::matthew(game.budgets());
  } else {
    rule = SharingRule::oblivious(std::move(shares));
    rewards.clear();
  }
  return GameInstance(g, std::move(rewards), std::move(rule), game.friendship());
}

StrategyProfile saturate_matching(const ContributionGame& game, const Matching& m) {
  const Graph& g = game.graph();
  StrategyProfile p = zero_profile(game);
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    const Edge& ed = g.edge(e);
    if (m.contains(ed.u, ed.v)) p.alloc[e] = {game.budget(ed.u), game.budget(ed.v)};
  }
  if (game.mode() == BudgetMode::kExact) {
    for (NodeId v = 0; v < game.num_nodes(); ++v) {
      if (m.is_matched(v) || g.degree(v) == 0) continue;
      Rational piece = game.budget(v) / g.degree(v);
      for (EdgeId e : g.incident(v))
        (g.edge(e).u == v ? p.alloc[e].first : p.alloc[e].second) = piece;
    }
  }
  return p;
}

StrategyProfile matching_to_equilibrium(const ContributionGame& game, const Matching& m) {
  if (game.mode() != BudgetMode::kAtMost)
    invalid("matching_to_equilibrium requires at-most budgets");
  if (!is_stable(corresponding_matching_game(game), m))
    throw Error(ErrorCode::kNotStable,
                "matching is not stable in the corresponding matching game");
  return saturate_matching(game, m);
}

namespace {

// Evaluates candidate moves against a fixed base profile by tracking reward
// deltas on the touched edges only.
class MoveChecker {
 public:
  MoveChecker(const ContributionGame& game, const StrategyProfile& base, int k)
      : game_(game), g_(game.graph()), base_(base), k_(k) {
    const int n = game.num_nodes();
    edge_reward_.resize(g_.num_edges());
    rewards_.assign(n, Rational(0));
    for (EdgeId e = 0; e < g_.num_edges(); ++e) {
      const Edge& ed = g_.edge(e);
      const auto& [su, sv] = base.alloc[e];
      edge_reward_[e] = {game.endpoint_reward(ed.u, e, su, sv),
                         game.endpoint_reward(ed.v, e, su, sv)};
      rewards_[ed.u] += edge_reward_[e].first;
      rewards_[ed.v] += edge_reward_[e].second;
    }
    utility_.resize(n);
    for (NodeId v = 0; v < n; ++v) utility_[v] = utility_with(v, {});
    alloc_.resize(n);
    for (NodeId v = 0; v < n; ++v)
      for (EdgeId e : g_.incident(v)) alloc_[v].push_back(side(v, e));
  }

  std::optional<DeviationWitness> run() {
    for (NodeId x = 0; x < game_.num_nodes(); ++x)
      if (auto w = unilateral(x)) return w;
    std::vector<EdgeId> edges(g_.num_edges());
    for (EdgeId e = 0; e < g_.num_edges(); ++e) edges[e] = e;
    std::sort(edges.begin(), edges.end(),
              [&](EdgeId a, EdgeId b) { return g_.edge(a) < g_.edge(b); });
    for (EdgeId e : edges)
      if (auto w = joint_common(e)) return w;
    for (NodeId u = 0; u < game_.num_nodes(); ++u)
      for (NodeId v = u + 1; v < game_.num_nodes(); ++v)
        if (auto w = joint_split(u, v)) return w;
    return std::nullopt;
  }

  std::uint64_t checked() const { return checked_; }

 private:
  using Alloc = std::vector<Rational>;  // one node's allocation, incident order
  struct Proposal {
    NodeId node;
    Alloc alloc;
  };

  const Rational& side(NodeId v, EdgeId e) const {
    return g_.edge(e).u == v ? base_.alloc[e].first : base_.alloc[e].second;
  }

  Rational free_budget(NodeId v) const {
    if (game_.mode() == BudgetMode::kExact) return 0;
    Rational s = 0;
    for (const auto& a : alloc_[v]) s += a;
    return game_.budget(v) - s;
  }

  Rational utility_with(NodeId x, const std::map<NodeId, Rational>& delta) const {
    Rational u = rewards_[x];
    if (auto it = delta.find(x); it != delta.end()) u += it->second;
    for (NodeId y = 0; y < game_.num_nodes(); ++y) {
      if (y == x) continue;
      const Rational& a = game_.alpha_between(x, y);
      if (a == 0) continue;
      Rational r = rewards_[y];
      if (auto it = delta.find(y); it != delta.end()) r += it->second;
      u += a * r;
    }
    return u;
  }

  // Applies the proposals; returns a witness when every proposer gains.
  std::optional<DeviationWitness> test(MoveKind kind, const std::vector<Proposal>& props,
                                       std::vector<EdgeId> receiving) {
    ++checked_;
    std::map<EdgeId, std::pair<Rational, Rational>> touched;
    for (const auto& p : props) {
      const auto& inc = g_.incident(p.node);
      for (std::size_t i = 0; i < inc.size(); ++i) {
        EdgeId e = inc[i];
        auto it = touched.try_emplace(e, base_.alloc[e]).first;
        (g_.edge(e).u == p.node ? it->second.first : it->second.second) = p.alloc[i];
      }
    }
    std::map<NodeId, Rational> delta;
    for (const auto& [e, s] : touched) {
      if (s == base_.alloc[e]) continue;
      const Edge& ed = g_.edge(e);
      delta[ed.u] += game_.endpoint_reward(ed.u, e, s.first, s.second) - edge_reward_[e].first;
      delta[ed.v] += game_.endpoint_reward(ed.v, e, s.first, s.second) - edge_reward_[e].second;
    }
    DeviationWitness w;
    for (const auto& p : props) {
      Rational after = utility_with(p.node, delta);
      if (!(after > utility_[p.node])) return std::nullopt;
      w.nodes.push_back(p.node);
      w.utility_before.push_back(utility_[p.node]);
      w.utility_after.push_back(std::move(after));
    }
    w.kind = kind;
    w.edges = std::move(receiving);
    w.after = base_;
    for (const auto& [e, s] : touched) w.after.alloc[e] = s;
    return w;
  }

  Alloc concentrated(NodeId x, std::size_t i) const {
    Alloc a(alloc_[x].size(), Rational(0));
    a[i] = game_.budget(x);
    return a;
  }

  std::optional<DeviationWitness> unilateral(NodeId x) {
    const auto& inc = g_.incident(x);
    const Alloc& cur = alloc_[x];
    const Rational free = free_budget(x);
    const bool at_most = game_.mode() == BudgetMode::kAtMost;
    if (free > 0) {
      for (std::size_t i = 0; i < inc.size(); ++i)
        for (int j = 1; j <= k_; ++j) {
          Alloc a = cur;
          a[i] += free * j / k_;
          if (auto w = test(MoveKind::kAddFree, {{x, a}}, {inc[i]})) return w;
        }
    }
    if (game_.budget(x) > 0) {
      for (std::size_t i = 0; i < inc.size(); ++i) {
        Alloc a = concentrated(x, i);
        if (a == cur) continue;
        if (auto w = test(MoveKind::kConcentrate, {{x, a}}, {inc[i]})) return w;
      }
    }
    for (std::size_t i = 0; i < inc.size(); ++i) {
      if (cur[i] == 0) continue;
      for (std::size_t l = 0; l < inc.size(); ++l) {
        if (l == i) continue;
        for (int j = 1; j <= k_; ++j) {
          Alloc a = cur;
          Rational amount = cur[i] * j / k_;
          a[i] -= amount;
          a[l] += amount;
          if (auto w = test(MoveKind::kTransfer, {{x, a}}, {inc[l]})) return w;
        }
      }
    }
    if (at_most) {
      for (std::size_t i = 0; i < inc.size(); ++i) {
        if (cur[i] == 0) continue;
        for (int j = 1; j <= k_; ++j) {
          Alloc a = cur;
          a[i] -= cur[i] * j / k_;
          if (auto w = test(MoveKind::kWithdraw, {{x, a}}, {})) return w;
        }
      }
    }
    return std::nullopt;
  }

  // Moves fraction t of x's movable budget onto incident slot i: free budget
  // first, then proportionally from x's other edges.
  Alloc shift_onto(NodeId x, std::size_t i, const Rational& t) const {
    const Alloc& cur = alloc_[x];
    Alloc a = cur;
    Rational others = 0;
    for (std::size_t l = 0; l < cur.size(); ++l)
      if (l != i) others += cur[l];
    const Rational free = free_budget(x);
    const Rational amount = t * (free + others);
    const Rational from_free = amount < free ? amount : free;
    const Rational rest = amount - from_free;
    if (rest > 0)
      for (std::size_t l = 0; l < cur.size(); ++l)
        if (l != i) a[l] -= rest * cur[l] / others;
    a[i] += amount;
    return a;
  }

  std::size_t slot(NodeId x, EdgeId e) const {
    const auto& inc = g_.incident(x);
    return static_cast<std::size_t>(std::find(inc.begin(), inc.end(), e) - inc.begin());
  }

  std::optional<DeviationWitness> joint_common(EdgeId e) {
    const Edge& ed = g_.edge(e);
    const std::size_t iu = slot(ed.u, e), iv = slot(ed.v, e);
    for (int j1 = 0; j1 <= k_; ++j1)
      for (int j2 = 0; j2 <= k_; ++j2) {
        if (j1 == 0 && j2 == 0) continue;
        Alloc au = shift_onto(ed.u, iu, Rational(j1) / k_);
        Alloc av = shift_onto(ed.v, iv, Rational(j2) / k_);
        if (au == alloc_[ed.u] && av == alloc_[ed.v]) continue;
        if (auto w = test(MoveKind::kJointCommon, {{ed.u, au}, {ed.v, av}}, {e})) return w;
      }
    return std::nullopt;
  }

  std::optional<DeviationWitness> joint_split(NodeId u, NodeId v) {
    const auto& inc_u = g_.incident(u);
    const auto& inc_v = g_.incident(v);
    for (std::size_t i = 0; i < inc_u.size(); ++i)
      for (std::size_t l = 0; l < inc_v.size(); ++l) {
        if (inc_u[i] == inc_v[l]) continue;
        Alloc au = concentrated(u, i);
        Alloc av = concentrated(v, l);
        if (au == alloc_[u] && av == alloc_[v]) continue;
        if (auto w = test(MoveKind::kJointSplit, {{u, au}, {v, av}}, {inc_u[i], inc_v[l]}))
          return w;
      }
    return std::nullopt;
  }

  const ContributionGame& game_;
  const Graph& g_;
  const StrategyProfile& base_;
  int k_;
  std::vector<std::pair<Rational, Rational>> edge_reward_;
  std::vector<Rational> rewards_;
  std::vector<Rational> utility_;
  std::vector<Alloc> alloc_;
  std::uint64_t checked_ = 0;
};

}  // namespace

EquilibriumVerdict is_pairwise_equilibrium(const ContributionGame& game,
                                           const StrategyProfile& profile, int grid_k) {
  if (grid_k < 1) invalid("grid resolution must be positive");
  validate_profile(game, profile);
  MoveChecker checker(game, profile, grid_k);
  EquilibriumVerdict verdict;
  verdict.grid_k = grid_k;
  verdict.witness = checker.run();
  verdict.equilibrium = !verdict.witness.has_value();
  verdict.moves_checked = checker.checked();
  return verdict;
}

StrategyProfile tight_social_optimum(const ContributionGame& game, int max_exact_n) {
  GameInstance inst = corresponding_matching_game(game);
  return saturate_matching(game, max_weight_matching(inst, max_exact_n).matching);
}

namespace {

void require_tight_budget_setting(const ContributionGame& game) {
  if (game.mode() != BudgetMode::kExact) invalid("forbidden edges need exact budgets");
  for (const auto& f : game.functions())
    if (f.split != SplitKind::kEqual) invalid("forbidden edges need equal splits");
  if (!game.friendship().is_local())
    invalid("forbidden edges need alpha_d = 0 for d >= 2");
}

}  // namespace

std::vector<EdgeId> detect_forbidden_edges(const ContributionGame& game) {
  require_tight_budget_setting(game);
  const Graph& g = game.graph();
  const Rational& a = game.friendship().alpha1();
  auto full = [&](EdgeId e) {
    const Edge& ed = g.edge(e);
    return game.function(e).total(game.budget(ed.u), game.budget(ed.v));
  };
  std::vector<EdgeId> out;
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    const Edge& ed = g.edge(e);
    const Rational lhs = (1 + a) * full(e);
    bool forbidden = false;
    for (EdgeId ex : g.incident(ed.u)) {
      NodeId x = g.edge(ex).other(ed.u);
      if (x == ed.v || g.degree(x) != 1) continue;
      for (EdgeId ey : g.incident(ed.v)) {
        NodeId y = g.edge(ey).other(ed.v);
        if (y == ed.u || g.degree(y) != 1) continue;
        const Rational rx = full(ex), ry = full(ey);
        if (lhs < (1 + a) * rx + a * ry && lhs < (1 + a) * ry + a * rx) forbidden = true;
      }
    }
    if (forbidden) out.push_back(e);
  }
  return out;
}

TightBudgetResult tight_budget_equilibrium(const ContributionGame& game, int max_exact_n) {
  TightBudgetResult result;
  result.forbidden = detect_forbidden_edges(game);
  const Graph& g = game.graph();
  std::vector<std::pair<NodeId, NodeId>> kept;
  std::vector<Rational> rewards;
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    if (std::binary_search(result.forbidden.begin(), result.forbidden.end(), e)) continue;
    const Edge& ed = g.edge(e);
    kept.emplace_back(ed.u, ed.v);
    rewards.push_back(game.function(e).total(game.budget(ed.u), game.budget(ed.v)));
  }
  GameInstance reduced(Graph(g.num_nodes(), kept), std::move(rewards), SharingRule::equal(),
                       game.friendship());
  DynamicsResult run = run_brbp(reduced, std::nullopt, max_exact_n);
  result.termination = run.trace.termination;
  result.matching = Matching::from_pairs(g, run.matching.pairs());
  result.profile = saturate_matching(game, result.matching);
  return result;
}

CcgAuditReport ccg_audit(const ContributionGame& game, const CcgAuditOptions& options) {
  CcgAuditReport report;
  GameInstance inst = corresponding_matching_game(game);
  report.optimum_profile = tight_social_optimum(game, options.limits.max_exact_n);
  report.optimum = total_reward(game, report.optimum_profile);
  if (inst.ratio_defined()) {
    report.Q = inst.compute_Q();
    report.bound = 1 + *report.Q;
  }
  report.bound_applicable = report.bound.has_value() && game.all_convex();

  auto record = [&](std::string source, StrategyProfile profile) {
    for (const auto& existing : report.equilibria)
      if (existing.profile == profile) return;
    CcgEquilibriumEntry entry;
    entry.source = std::move(source);
    entry.value = total_reward(game, profile);
    entry.profile = std::move(profile);
    if (report.optimum == 0)
      entry.ratio = Rational(1);
    else if (entry.value > 0)
      entry.ratio = Rational(report.optimum / entry.value);
    report.equilibria.push_back(std::move(entry));
  };

  for (const auto& m : enumerate_stable_matchings(inst, options.limits.max_enum_n)) {
    StrategyProfile p = saturate_matching(game, m);
    if (is_pairwise_equilibrium(game, p, options.grid_k).equilibrium)
      record("matching", std::move(p));
  }

  StrategyProfile current = game.mode() == BudgetMode::kAtMost
                                ? zero_profile(game)
                                : saturate_matching(game, Matching(game.num_nodes()));
  for (std::uint64_t step = 0; step <= options.local_search_cap; ++step) {
    auto verdict = is_pairwise_equilibrium(game, current, options.grid_k);
    if (verdict.equilibrium) {
      record("local-search", current);
      break;
    }
    if (step == options.local_search_cap) break;
    current = std::move(verdict.witness->after);
    ++report.local_search_steps;
  }

  for (const auto& entry : report.equilibria) {
    if (!entry.ratio) {
      report.worst_ratio.reset();
      if (report.bound_applicable) report.holds = false;
      break;
    }
    if (!report.worst_ratio || *entry.ratio > *report.worst_ratio)
      report.worst_ratio = entry.ratio;
  }
  if (report.bound_applicable && report.worst_ratio && *report.worst_ratio > *report.bound)
    report.holds = false;
  return report;
}

}  // namespace socialmatch
