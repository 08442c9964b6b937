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

#include "socialmatch/generators.hpp"

#include <algorithm>
#include <array>
#include <string>

#include "socialmatch/error.hpp"
#include "socialmatch/matching.hpp"
#include "socialmatch/oracle.hpp"
#include "socialmatch/rng.hpp"

namespace socialmatch {
namespace {

const std::vector<std::pair<NodeId, NodeId>> kPathEdges = {
    {path4::w, path4::u}, {path4::u, path4::v}, {path4::v, path4::z}};

[[noreturn]] void invalid(const std::string& what) {
  throw Error(ErrorCode::kInvalidArgument, what);
}

}  // namespace

GameInstance gen_path3_equal(FriendshipVector alpha) {
  return GameInstance(Graph(4, kPathEdges), {1, 1, 1}, SharingRule::equal(),
                      std::move(alpha));
}

GameInstance gen_pos_tight(const Rational& alpha1, const Rational& eps) {
  if (eps <= 0) invalid("eps must be positive");
  Rational r_uv = (1 + 2 * alpha1 + eps) / (1 + alpha1);
  return GameInstance(Graph(4, kPathEdges), {1, r_uv, 1}, SharingRule::equal(),
                      FriendshipVector({alpha1}));
}

GameInstance gen_matthew_poa_tight(const Rational& R, bool pos_variant,
                                   const Rational& eps) {
  if (R < 1) invalid("R must be at least 1");
  if (pos_variant && eps <= 0) invalid("eps must be positive");
  Rational r_uv = pos_variant ? Rational(2 + 2 * eps) : Rational(2);
  return GameInstance(Graph(4, kPathEdges), {R + 1, r_uv, R + 1},
                      SharingRule::matthew({R, 1, 1, R}), FriendshipVector());
}

GameInstance gen_friendship_rs_tight(const Rational& R, const Rational& alpha1,
                                     TightVariant variant, const Rational& eps) {
  if (R < 1) invalid("R must be at least 1");
  if (variant == TightVariant::kPoS && eps <= 0) invalid("eps must be positive");
  const Rational low = 1 / (1 + alpha1 * R);
  const Rational high = R / (1 + alpha1 * R);
  Rational mid = 1 / (1 + alpha1);
  if (variant == TightVariant::kPoS)
    mid *= (1 + alpha1 * (R + 1)) / (1 + alpha1 * R) + eps;
  // Edge orientation is (edge.u share, edge.v share): (w,u), (u,v), (v,z).
  return GameInstance(Graph(4, kPathEdges), {},
                      SharingRule::oblivious({{high, low}, {mid, mid}, {low, high}}),
                      FriendshipVector({alpha1}));
}

GameInstance gen_cyclic_triangle(FriendshipVector alpha) {
  // Edges (0,1), (1,2), (0,2); node i gets 2 on the edge to i+1.
  return GameInstance(Graph(3, {{0, 1}, {1, 2}, {0, 2}}), {},
                      SharingRule::oblivious({{2, 1}, {2, 1}, {1, 2}}), std::move(alpha));
}

namespace {

constexpr std::array<std::pair<NodeId, NodeId>, 5> kPentagon = {
    {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}}};  // pq, qx, xy, yz, zp

GameInstance pentagon(const std::array<std::int64_t, 5>& lambda,
                      const std::array<Rational, 5>& reward, FriendshipVector alpha) {
  std::vector<std::pair<NodeId, NodeId>> edges(kPentagon.begin(), kPentagon.end());
  std::vector<Rational> l;
  for (auto x : lambda) l.emplace_back(static_cast<long>(x));
  return GameInstance(Graph(5, edges), std::vector<Rational>(reward.begin(), reward.end()),
                      SharingRule::matthew(std::move(l)), std::move(alpha));
}

// q-coefficient of node x on an edge to y under Matthew sharing.
Rational q_coefficient(const std::array<std::int64_t, 5>& lambda, int x, int y,
                       const Rational& a1) {
  Rational lx = static_cast<long>(lambda[x]), ly = static_cast<long>(lambda[y]);
  return (lx + a1 * ly) / (lx + ly);
}

// Smallest multiple of 1/4 strictly above t.
Rational next_quarter(const Rational& t) {
  mpz_class k = t.get_num() * 4 / t.get_den();  // floor for t > 0
  Rational q(k + 1, 4);
  q.canonicalize();
  return q;
}

// Committed output of nonexistence_search(kNonexistenceSeed).
constexpr std::array<std::int64_t, 5> kNonexistenceLambda = {185, 43, 170, 58, 29};
const char* const kNonexistenceReward[5] = {"116", "463/4", "469/4", "107", "449/4"};

}  // namespace

NonexistenceSearch nonexistence_search(std::uint64_t seed, std::uint64_t max_tries) {
  const Rational a1(4, 5);
  Rng rng(seed);
  NonexistenceSearch result;
  while (result.tries < max_tries) {
    ++result.tries;
    std::array<std::int64_t, 5> lambda{};
    for (auto& l : lambda) l = rng.between(1, 200);
    // Edge i joins nodes i and i+1 (mod 5). Node i must strictly prefer edge
    // i to edge i-1 in q-value; rewards 1..4 are the tightest quarter steps
    // and node 0 closes the cycle.
    std::array<Rational, 5> reward;
    reward[0] = static_cast<long>(rng.between(50, 150));
    for (int i = 1; i < 5; ++i)
      reward[i] = next_quarter(reward[i - 1] * q_coefficient(lambda, i, i - 1, a1) /
                               q_coefficient(lambda, i, (i + 1) % 5, a1));
    if (!(q_coefficient(lambda, 0, 1, a1) * reward[0] >
          q_coefficient(lambda, 0, 4, a1) * reward[4]))
      continue;
    bool in_range = true;
    for (const auto& r : reward) in_range = in_range && r >= 50 && r <= 150;
    if (!in_range) continue;
    GameInstance with = pentagon(lambda, reward, FriendshipVector({a1}));
    if (!enumerate_stable_matchings(with).empty()) continue;
    if (enumerate_stable_matchings(with.with_friendship({})).empty()) continue;
    result.instance = std::move(with);
    return result;
  }
  return result;
}

GameInstance gen_nonexistence_friendship_matthew() {
  std::array<Rational, 5> reward;
  for (int i = 0; i < 5; ++i) reward[i] = parse_rational(kNonexistenceReward[i]);
  return pentagon(kNonexistenceLambda, reward, FriendshipVector({Rational(4, 5)}));
}

GameInstance augment_with_auxiliary_neighbors(const GameInstance& inst,
                                              const Rational& eps) {
  if (inst.sharing().kind != SharingKind::kEqual)
    invalid("auxiliary augmentation requires equal sharing");
  if (eps <= 0) invalid("eps must be positive");
  const int n = inst.num_nodes();
  std::vector<std::pair<NodeId, NodeId>> edges;
  std::vector<Rational> rewards;
  for (EdgeId e = 0; e < inst.num_edges(); ++e) {
    const Rational scaled = 1 + inst.reward(e) * eps;
    if (scaled >= 2) invalid("eps * r must stay below 1 on every edge");
    edges.emplace_back(inst.graph().edge(e).u, inst.graph().edge(e).v);
    rewards.push_back(scaled);
  }
  for (NodeId i = 0; i < n; ++i) {
    edges.emplace_back(i, n + i);
    rewards.emplace_back(1);
  }
  return GameInstance(Graph(2 * n, edges), std::move(rewards), SharingRule::equal(),
                      inst.friendship());
}

GameInstance gen_random(const RandomSpec& spec) {
  if (spec.n < 0) invalid("n must be nonnegative");
  if (spec.density < 0 || spec.density > 1) invalid("density must lie in [0,1]");
  if (spec.r_min > spec.r_max || spec.r_max < 1) invalid("bad reward range");
  const std::int64_t lo = std::max<std::int64_t>(spec.r_min, 1);
  Rng rng(spec.seed);
  const auto num = spec.density.get_num().get_ui();
  const auto den = spec.density.get_den().get_ui();

  std::vector<std::pair<NodeId, NodeId>> edges;
  for (NodeId a = 0; a < spec.n; ++a)
    for (NodeId b = a + 1; b < spec.n; ++b)
      if (rng.chance(num, den)) edges.emplace_back(a, b);
  const std::size_t m = edges.size();
  auto draw = [&](std::int64_t a, std::int64_t b) {
    return Rational(static_cast<long>(rng.between(a, b)));
  };

  std::vector<Rational> rewards;
  SharingRule rule;
  switch (spec.rule) {
    case SharingKind::kEqual:
      for (std::size_t e = 0; e < m; ++e) rewards.push_back(draw(lo, spec.r_max));
      break;
    case SharingKind::kOblivious: {
      std::vector<std::pair<Rational, Rational>> shares;
      for (std::size_t e = 0; e < m; ++e) {
        Rational a = draw(lo, spec.r_max);
        shares.emplace_back(a, draw(lo, spec.r_max));
      }
      rule = SharingRule::oblivious(std::move(shares));
      break;
    }
    case SharingKind::kMatthew:
    case SharingKind::kParasite: {
      for (std::size_t e = 0; e < m; ++e) rewards.push_back(draw(lo, spec.r_max));
      std::vector<Rational> lambda;
      for (int i = 0; i < spec.n; ++i) lambda.push_back(draw(1, spec.lambda_max));
      rule = spec.rule == SharingKind::kMatthew ? SharingRule::matthew(std::move(lambda))
                                                : SharingRule::parasite(std::move(lambda));
      break;
    }
    case SharingKind::kTrust: {
      std::vector<Rational> beta, h;
      for (int i = 0; i < spec.n; ++i) beta.push_back(draw(0, spec.beta_max));
      for (std::size_t e = 0; e < m; ++e) h.push_back(draw(lo, spec.r_max));
      rule = SharingRule::trust(std::move(beta), std::move(h));
      break;
    }
  }
  return GameInstance(Graph(spec.n, edges), std::move(rewards), std::move(rule),
                      spec.alpha);
}

ContributionGame gen_tight_budget_path(const Rational& eps, const Rational& alpha1,
                                       BudgetMode mode) {
  if (eps <= 0 || eps >= 1) invalid("eps must lie in (0,1)");
  RewardFunctionSpec outer{RewardFamily::kMinLinear, 1 - eps};
  RewardFunctionSpec middle{RewardFamily::kMinLinear, 1};
  return ContributionGame(Graph(4, kPathEdges), {1, 1, 1, 1}, {outer, middle, outer},
                          FriendshipVector({alpha1}), mode);
}

ContributionGame gen_random_ccg(const RandomCcgSpec& spec) {
  if (spec.n < 0) invalid("n must be nonnegative");
  if (spec.density < 0 || spec.density > 1) invalid("density must lie in [0,1]");
  if (spec.budget_max < 1 || spec.c_max < 1 || spec.k_max < 1 || spec.lambda_max < 1)
    invalid("ranges must be positive");
  Rng rng(spec.seed);
  const auto num = spec.density.get_num().get_ui();
  const auto den = spec.density.get_den().get_ui();
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (NodeId a = 0; a < spec.n; ++a)
    for (NodeId b = a + 1; b < spec.n; ++b)
      if (rng.chance(num, den)) edges.emplace_back(a, b);

  std::vector<Rational> budgets;
  for (int i = 0; i < spec.n; ++i)
    budgets.emplace_back(static_cast<long>(rng.between(1, spec.budget_max)));
  // Exact budgets cannot sit on isolated nodes.
  if (spec.mode == BudgetMode::kExact) {
    std::vector<bool> touched(spec.n, false);
    for (auto [a, b] : edges) touched[a] = touched[b] = true;
    for (int i = 0; i < spec.n; ++i)
      if (!touched[i]) budgets[i] = 0;
  }
  std::vector<RewardFunctionSpec> functions;
  bool any_matthew = false;
  for (std::size_t e = 0; e < edges.size(); ++e) {
    RewardFunctionSpec f;
    f.family = rng.chance(1, 2) ? RewardFamily::kProduct : RewardFamily::kPowerProduct;
    f.c = static_cast<long>(rng.between(1, spec.c_max));
    if (f.family == RewardFamily::kPowerProduct)
      f.k = static_cast<int>(rng.between(1, spec.k_max));
    f.split = spec.split ? *spec.split : static_cast<SplitKind>(rng.below(3));
    any_matthew = any_matthew || f.split == SplitKind::kMatthew;
    functions.push_back(f);
  }
  std::vector<Rational> lambda;
  if (any_matthew)
    for (int i = 0; i < spec.n; ++i)
      lambda.emplace_back(static_cast<long>(rng.between(1, spec.lambda_max)));
  return ContributionGame(Graph(spec.n, edges), std::move(budgets), std::move(functions),
                          spec.alpha, spec.mode, std::move(lambda));
}

}  // namespace socialmatch
