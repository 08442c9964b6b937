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
#include "socialmatch/error.hpp"
#include "socialmatch/generators.hpp"
#include "socialmatch/instance.hpp"

using namespace socialmatch;

namespace {

Rational q(long a, long b = 1) { return make_rational(a, b); }

GameInstance single_edge(SharingRule rule, std::vector<Rational> rewards,
                         FriendshipVector alpha = {}) {
  return GameInstance(Graph(2, {{0, 1}}), std::move(rewards), std::move(rule),
                      std::move(alpha));
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::kInvalidArgument;
}

}  // namespace

TEST_CASE("distances on small graphs") {
  DistanceMatrix d = build_distances(Graph(2, {{0, 1}}));
  CHECK(d(0, 1) == 1);
  CHECK(d(0, 0) == 0);

  DistanceMatrix path = build_distances(gen_path3_equal().graph());
  CHECK(path(path4::w, path4::z) == 3);
  CHECK(path(path4::z, path4::w) == 3);

  DistanceMatrix apart = build_distances(Graph(2, {}));
  CHECK(apart(0, 1) == kUnreachable);
  FriendshipVector alpha({q(1, 2)});
  CHECK(alpha.at(kUnreachable) == 0);
}

TEST_CASE("distances match an independent BFS and obey the triangle inequality") {
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    GameInstance inst = oracle::random_instance(seed, 9, SharingKind::kEqual, false);
    auto ref = oracle::hop_distances(inst.graph());
    const auto& d = inst.distances();
    const int n = inst.num_nodes();
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        REQUIRE(d(a, b) == ref[a][b]);
        CHECK(d(a, b) == d(b, a));
        for (int c = 0; c < n; ++c)
          if (d(a, c) >= 0 && d(c, b) >= 0) CHECK(d(a, b) <= d(a, c) + d(c, b));
      }
  }
}

TEST_CASE("shares under each rule") {
  SUBCASE("matthew symmetric") {
    auto inst = single_edge(SharingRule::matthew({1, 1}), {2});
    CHECK(inst.share(0, 0) == 1);
    CHECK(inst.share(1, 0) == 1);
  }
  SUBCASE("matthew with brand value R on the other side") {
    const Rational R = 7;
    auto inst = single_edge(SharingRule::matthew({1, R}), {R + 1});
    CHECK(inst.share(0, 0) == 1);
    CHECK(inst.share(1, 0) == R);
  }
  SUBCASE("trust") {
    // beta_0 = 4, beta_1 = 3, h = 2: node 0 gets h + beta_1.
    auto inst = single_edge(SharingRule::trust({4, 3}, {2}), {});
    CHECK(inst.share(0, 0) == 5);
    CHECK(inst.share(1, 0) == 6);
    CHECK(inst.reward(0) == 2 * 2 + 4 + 3);
  }
  SUBCASE("equal") {
    auto inst = single_edge(SharingRule::equal(), {3});
    CHECK(inst.share(0, 0) == q(3, 2));
    CHECK(inst.payoff(0, 0) == 3);
  }
  SUBCASE("not incident") {
    GameInstance path = gen_path3_equal();
    CHECK(code_of([&] { (void)path.share(path4::z, 0); }) == ErrorCode::kNotIncident);
  }
}

TEST_CASE("construction rejects invalid data") {
  CHECK(code_of([] { Graph(2, {{0, 0}}); }) == ErrorCode::kInvalidArgument);
  CHECK(code_of([] { Graph(2, {{0, 1}, {1, 0}}); }) == ErrorCode::kInvalidArgument);
  CHECK(code_of([] { Graph(2, {{0, 2}}); }) == ErrorCode::kInvalidArgument);
  CHECK(code_of([] { FriendshipVector({q(1, 4), q(1, 2)}); }) == ErrorCode::kInvalidArgument);
  CHECK(code_of([] { FriendshipVector({q(3, 2)}); }) == ErrorCode::kInvalidArgument);
  CHECK(code_of([] { FriendshipVector({q(-1, 2)}); }) == ErrorCode::kInvalidArgument);
  CHECK(code_of([] { single_edge(SharingRule::equal(), {0}); }) == ErrorCode::kInvalidArgument);
  CHECK(code_of([] { single_edge(SharingRule::matthew({0, 1}), {1}); }) ==
        ErrorCode::kInvalidArgument);
  CHECK(code_of([] { single_edge(SharingRule::oblivious({{1, 1}}), {3}); }) ==
        ErrorCode::kInvalidArgument);
  CHECK(code_of([] { single_edge(SharingRule::oblivious({{-1, 2}}), {}); }) ==
        ErrorCode::kInvalidArgument);
  CHECK(code_of([] { single_edge(SharingRule::trust({-1, 1}, {1}), {}); }) ==
        ErrorCode::kInvalidArgument);
}

TEST_CASE("R, Q and Q'") {
  CHECK(gen_path3_equal().compute_R() == 1);
  CHECK(gen_matthew_poa_tight(5).compute_R() == 5);
  CHECK(single_edge(SharingRule::oblivious({{3, 1}}), {}).compute_R() == 3);
  CHECK(code_of([] { single_edge(SharingRule::oblivious({{0, 1}}), {}).compute_R(); }) ==
        ErrorCode::kUndefinedRatio);
  CHECK_FALSE(single_edge(SharingRule::oblivious({{0, 1}}), {}).ratio_defined());

  for (auto a : {q(0), q(1, 4), q(1, 2), q(1)}) CHECK(q_from_R(1, a) == 1);
  for (long R : {1, 2, 5, 10}) CHECK(q_from_R(R, 0) == R);
  // Q tends to 2 from below as R grows when alpha_1 = 1/2.
  Rational big = q_from_R(1'000'000, q(1, 2));
  CHECK(big < 2);
  CHECK(2 - big < q(1, 100'000));
  CHECK(q_prime_from_R(3, q(1, 2)) == q(3, 2) * 4 / (1 + q(1, 2) * 4));
}

TEST_CASE("q-values") {
  auto inst = single_edge(SharingRule::equal(), {2}, FriendshipVector({q(1, 2)}));
  CHECK(inst.q_value(0, 0) == q(3, 2));
  CHECK(inst.q_value(1, 0) == q(3, 2));

  for (long R : {1, 2, 5})
    for (auto a : {q(0), q(1, 4), q(1, 2), q(1)}) {
      auto g = gen_friendship_rs_tight(R, a, TightVariant::kPoA);
      EdgeId uw = 0;  // (w,u)
      CHECK(g.q_value(path4::u, uw) == 1);
      CHECK(g.q_value(path4::w, uw) == q_from_R(R, a));
    }

  auto plain = single_edge(SharingRule::oblivious({{3, 1}}), {});
  CHECK(plain.q_value(0, 0) == 3);
}

TEST_CASE("share and q identities hold on random instances of every rule") {
  for (auto rule : {SharingKind::kEqual, SharingKind::kOblivious, SharingKind::kMatthew,
                    SharingKind::kParasite, SharingKind::kTrust})
    for (std::uint64_t seed = 1; seed <= 80; ++seed) {
      GameInstance inst = oracle::random_instance(seed, 8, rule, true);
      const Rational a1 = inst.friendship().alpha1();
      for (EdgeId e = 0; e < inst.num_edges(); ++e) {
        const auto& ed = inst.graph().edge(e);
        REQUIRE(inst.share(ed.u, e) + inst.share(ed.v, e) == inst.reward(e));
        CHECK(inst.share(ed.u, e) == oracle::share(inst, ed.u, e));
        CHECK(inst.q_value(ed.u, e) + inst.q_value(ed.v, e) == (1 + a1) * inst.reward(e));
      }
      if (inst.ratio_defined() && inst.num_edges() > 0) {
        CHECK(inst.compute_Q() >= inst.max_q_ratio());
        // An edge attaining R attains Q as well.
        CHECK(inst.compute_Q() == q_from_R(inst.compute_R(), a1));
        CHECK(inst.max_q_ratio() == inst.compute_Q());
      }
    }
}

TEST_CASE("parasite with lambda equals matthew with 1/lambda") {
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    GameInstance p = oracle::random_instance(seed, 8, SharingKind::kParasite, false);
    std::vector<Rational> inv;
    for (const auto& l : p.sharing().lambda) inv.push_back(1 / l);
    GameInstance m(p.graph(), p.rewards(), SharingRule::matthew(inv), p.friendship());
    for (EdgeId e = 0; e < p.num_edges(); ++e)
      for (NodeId x : {p.graph().edge(e).u, p.graph().edge(e).v})
        CHECK(p.share(x, e) == m.share(x, e));
  }
}
