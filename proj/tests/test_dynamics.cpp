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

#include "doctest.h"
#include "oracle_support.hpp"
#include "socialmatch/dynamics.hpp"
#include "socialmatch/generators.hpp"
#include "socialmatch/oracle.hpp"

using namespace socialmatch;
using path4::u;
using path4::v;
using path4::w;
using path4::z;

namespace {

Rational q(long a, long b = 1) { return make_rational(a, b); }

bool same_steps(const DynamicsTrace& a, const DynamicsTrace& b) {
  if (a.steps.size() != b.steps.size()) return false;
  for (std::size_t i = 0; i < a.steps.size(); ++i) {
    if (a.steps[i].deviation.u != b.steps[i].deviation.u ||
        a.steps[i].deviation.v != b.steps[i].deviation.v ||
        a.steps[i].after != b.steps[i].after)
      return false;
  }
  return true;
}

GameInstance random_equal_with_alpha(std::uint64_t seed, int max_n) {
  return oracle::random_instance(seed, max_n, SharingKind::kEqual, true);
}

}  // namespace

TEST_CASE("best relaxed blocking pair") {
  GameInstance p = gen_path3_equal(FriendshipVector({q(1, 2)}));
  CHECK_FALSE(best_relaxed_blocking_pair(p, Matching::from_pairs(p.graph(), {{w, u}, {v, z}})));

  GameInstance g = gen_pos_tight(q(1, 2), q(1, 10));
  auto best = best_relaxed_blocking_pair(g, Matching::from_pairs(g.graph(), {{w, u}, {v, z}}));
  REQUIRE(best);
  CHECK(*best == std::pair<NodeId, NodeId>{u, v});

  // Two disjoint copies of the lifted path with identical rewards: the
  // lower-numbered copy wins the tie.
  Graph twin(8, {{0, 1}, {1, 2}, {2, 3}, {4, 5}, {5, 6}, {6, 7}});
  const Rational mid = g.reward(1);
  GameInstance t(twin, {1, mid, 1, 1, mid, 1}, SharingRule::equal(), FriendshipVector({q(1, 2)}));
  Matching m = Matching::from_pairs(twin, {{0, 1}, {2, 3}, {4, 5}, {6, 7}});
  for (int i = 0; i < 3; ++i) CHECK(*best_relaxed_blocking_pair(t, m) == std::pair<NodeId, NodeId>{1, 2});
}

TEST_CASE("brbp on the path gadgets") {
  for (auto alpha : {FriendshipVector(), FriendshipVector({q(1, 2)})}) {
    GameInstance p = gen_path3_equal(alpha);
    DynamicsResult r = run_brbp(p);
    CHECK(r.trace.steps.empty());
    CHECK(matching_value(p, r.matching) == 2);
    CHECK(assert_trace_lemmas(r.trace).ok());
  }
  GameInstance g = gen_pos_tight(q(1, 2), q(1, 10));
  DynamicsResult r = run_brbp(g);
  REQUIRE(r.trace.steps.size() == 1);
  CHECK(r.trace.steps[0].deviation.kind == DeviationKind::kRelaxedBiswivel);
  CHECK(r.matching.pairs() == oracle::Pairs{{u, v}});
  CHECK(matching_value(g, r.matching) == q(7, 5));
  Rational ratio = max_weight_matching(g).value / matching_value(g, r.matching);
  CHECK(ratio == q(10, 7));
  CHECK(ratio <= q(3, 2));
  CHECK(r.trace.termination == Termination::kStable);
  CHECK(assert_trace_lemmas(r.trace).first_is_relaxed_biswivel);
}

TEST_CASE("brbp on random equal-sharing instances") {
  for (std::uint64_t seed = 1; seed <= 150; ++seed) {
    GameInstance inst = random_equal_with_alpha(seed, 10);
    DynamicsResult r = run_brbp(inst);
    const auto m = static_cast<std::uint64_t>(inst.num_edges());
    CHECK(r.trace.steps.size() <= 2 * m * m);
    CHECK(r.trace.termination == Termination::kStable);
    REQUIRE(oracle::stable(inst, r.matching.pairs()));
    const Rational a1 = inst.friendship().alpha1(), a2 = inst.friendship().alpha2();
    CHECK(matching_value(inst, r.matching) * (2 + 2 * a1) >=
          (1 + 2 * a1 + a2) * oracle::optimum(inst));
    LemmaReport lemmas = assert_trace_lemmas(r.trace);
    CHECK_MESSAGE(lemmas.ok(), seed);
  }
}

TEST_CASE("best blocking pair matches brbp when alpha_1 = alpha_2") {
  for (std::uint64_t seed = 1; seed <= 80; ++seed) {
    GameInstance base = oracle::random_instance(seed, 9, SharingKind::kEqual, false);
    Rng rng(seed + 11);
    Rational a = make_rational(rng.between(0, 4), 4);
    GameInstance inst = base.with_friendship(FriendshipVector({a, a}));
    DynamicsResult brbp = run_brbp(inst);
    DynamicsResult bbp = run_best_blocking_pair(inst, max_weight_matching(inst).matching);
    CHECK(same_steps(brbp.trace, bbp.trace));
    CHECK(brbp.matching == bbp.matching);
  }
}

TEST_CASE("stable starts are fixed points") {
  GameInstance p = gen_path3_equal();
  Matching m = Matching::from_pairs(p.graph(), {{u, v}});
  CHECK(run_best_blocking_pair(p, m).trace.steps.empty());
  CHECK(run_arbitrary_dynamics(p, m, 7).trace.steps.empty());
  CHECK(run_arbitrary_dynamics(p, m, 7).matching == m);
}

TEST_CASE("arbitrary dynamics: determinism and convergence") {
  GameInstance g = gen_pos_tight(q(1, 2), q(1, 10));
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    DynamicsResult r = run_arbitrary_dynamics(g, Matching(4), seed);
    CHECK(r.trace.termination == Termination::kStable);
    CHECK(r.trace.steps.size() <= 4);
    CHECK(is_stable(g, r.matching));
  }
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    GameInstance inst = random_equal_with_alpha(seed, 9);
    DynamicsResult a = run_arbitrary_dynamics(inst, Matching(inst.num_nodes()), seed);
    DynamicsResult b = run_arbitrary_dynamics(inst, Matching(inst.num_nodes()), seed);
    CHECK(same_steps(a.trace, b.trace));
    if (inst.friendship().is_zero()) CHECK(a.trace.termination == Termination::kStable);
  }
}

TEST_CASE("arbitrary dynamics can take longer than brbp on augmented instances") {
  bool longer = false;
  for (std::uint64_t seed = 1; seed <= 40 && !longer; ++seed) {
    GameInstance base = oracle::random_instance(seed, 6, SharingKind::kEqual, false);
    if (base.num_edges() == 0) continue;
    Rational top = 0;
    for (const auto& r : base.rewards()) top = std::max(top, r);
    GameInstance aug = augment_with_auxiliary_neighbors(base, 1 / (2 * top));
    const std::size_t brbp = run_brbp(aug).trace.steps.size();
    for (std::uint64_t s = 1; s <= 20; ++s)
      if (run_arbitrary_dynamics(aug, Matching(aug.num_nodes()), s).trace.steps.size() > brbp)
        longer = true;
  }
  CHECK(longer);
}

TEST_CASE("cap hits are reported") {
  GameInstance none = gen_nonexistence_friendship_matthew();
  DynamicsResult r = run_best_blocking_pair(none, Matching(5), 50);
  CHECK(r.trace.termination == Termination::kCapHit);
  CHECK(r.trace.steps.size() == 50);
  CHECK(run_brbp(none, 40).trace.termination == Termination::kCapHit);
  DynamicsResult a = run_arbitrary_dynamics(none, Matching(5), 3, 60);
  CHECK(a.trace.termination == Termination::kCapHit);
}

TEST_CASE("lemma checks catch malformed traces") {
  CHECK(assert_trace_lemmas(DynamicsTrace{}).ok());

  GameInstance g = gen_path3_equal();
  DynamicsTrace t;
  t.initial = Matching(4);
  t.edge_count = g.num_edges();
  TraceStep s;
  s.deviation = make_deviation(g, Matching(4), u, v);
  s.r = 1;
  s.value_after = 1;
  s.after = apply_deviation(Matching(4), s.deviation);
  t.steps.push_back(s);
  LemmaReport bad = assert_trace_lemmas(t);
  CHECK_FALSE(bad.first_is_relaxed_biswivel);
  CHECK_FALSE(bad.ok());

  // A relaxed biswivel on a heavier edge after a lighter step.
  GameInstance pt = gen_pos_tight(q(1, 2), q(1, 10));
  DynamicsResult run = run_brbp(pt);
  DynamicsTrace twisted = run.trace;
  TraceStep light = twisted.steps[0];
  light.r = 1;
  twisted.steps.insert(twisted.steps.begin(), light);
  twisted.steps[1].r = 2;
  twisted.phase_starts = {0, 1};
  LemmaReport r2 = assert_trace_lemmas(twisted);
  CHECK_FALSE(r2.reward_ordering_ok);
  CHECK_FALSE(r2.biswivel_edges_distinct);
}
