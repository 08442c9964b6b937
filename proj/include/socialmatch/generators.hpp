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

#include "socialmatch/ccg.hpp"
#include "socialmatch/instance.hpp"

namespace socialmatch {

// Path gadgets label their nodes w=0, u=1, v=2, z=3 with edges
// (w,u), (u,v), (v,z) in that order.
namespace path4 {
inline constexpr NodeId w = 0, u = 1, v = 2, z = 3;
}

// All rewards 1, equal sharing.
GameInstance gen_path3_equal(FriendshipVector alpha = {});

// Equal sharing, r_uv = (1+2a1+eps)/(1+a1), outer rewards 1, alpha = (a1).
GameInstance gen_pos_tight(const Rational& alpha1, const Rational& eps);

// Matthew sharing, lambda = (R,1,1,R), r_uw = r_vz = R+1 and r_uv = 2, or
// 2+2eps in the stability variant. No friendship.
GameInstance gen_matthew_poa_tight(const Rational& R, bool pos_variant = false,
                                   const Rational& eps = Rational(1, 10));

enum class TightVariant { kPoA, kPoS };

// Oblivious shares realising q-ratio Q on the outer edges with alpha = (a1).
// The stability variant lifts the middle edge by eps.
GameInstance gen_friendship_rs_tight(const Rational& R, const Rational& alpha1,
                                     TightVariant variant,
                                     const Rational& eps = Rational(1, 100));

// Triangle 0,1,2 with oblivious shares 2 toward the successor and 1 toward
// the predecessor, so every node prefers its successor.
GameInstance gen_cyclic_triangle(FriendshipVector alpha = {});

// 5-cycle p,q,x,y,z (ids 0..4) under Matthew sharing whose q-preferences at
// alpha1 = 4/5 form the cycle q->x->y->z->p->q. Returns the committed
// instance found by nonexistence_search(kNonexistenceSeed).
GameInstance gen_nonexistence_friendship_matthew();

inline constexpr std::uint64_t kNonexistenceSeed = 20240611;

struct NonexistenceSearch {
  std::optional<GameInstance> instance;  // with alpha = (4/5)
  std::uint64_t tries = 0;
};

// Samples integer lambda in [1,200] and a first reward in [50,150], sets the
// remaining rewards to the tightest quarter-integer steps, and stops when the five
// strict q-inequalities hold, no matching is stable at alpha1 = 4/5 and some
// matching is stable without friendship.
NonexistenceSearch nonexistence_search(std::uint64_t seed,
                                       std::uint64_t max_tries = 1'000'000);

// Rescales every reward r to 1 + r*eps and attaches one pendant neighbor with
// reward 1 to each original node (aux of node i is n+i). Equal sharing only;
// requires eps * max r < 1 so that the pendant matching is the unique optimum.
GameInstance augment_with_auxiliary_neighbors(const GameInstance& inst,
                                              const Rational& eps);

struct RandomSpec {
  std::uint64_t seed = 1;
  int n = 8;
  Rational density = Rational(1, 2);  // edge probability
  std::int64_t r_min = 1;             // integer reward / share / quality range
  std::int64_t r_max = 10;
  SharingKind rule = SharingKind::kEqual;
  std::int64_t lambda_max = 10;  // matthew / parasite brand values in [1, max]
  std::int64_t beta_max = 10;    // trust values in [0, max]
  FriendshipVector alpha;
};

// Seeded instance; identical output on every platform for a fixed spec.
// Oblivious shares and trust qualities are drawn from [max(r_min,1), r_max].
GameInstance gen_random(const RandomSpec& spec);

// Contribution-game path w-u-v-z with f_uv = min, f_uw = f_vz = (1-eps) min,
// unit budgets, equal splits and alpha = (a1).
ContributionGame gen_tight_budget_path(const Rational& eps, const Rational& alpha1,
                                       BudgetMode mode);

struct RandomCcgSpec {
  std::uint64_t seed = 1;
  int n = 6;
  Rational density = Rational(1, 2);
  std::int64_t budget_max = 4;  // budgets in [1, max]
  std::int64_t c_max = 4;       // coefficients in [1, max]
  int k_max = 2;                // PowerProduct exponent in [1, max]
  // Unset: each edge draws its own split.
  std::optional<SplitKind> split;
  std::int64_t lambda_max = 10;
  BudgetMode mode = BudgetMode::kAtMost;
  FriendshipVector alpha;
};

// Product or PowerProduct per edge, chosen by coin flip.
ContributionGame gen_random_ccg(const RandomCcgSpec& spec);

}  // namespace socialmatch
