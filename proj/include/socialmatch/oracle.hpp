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
#include <string>
#include <vector>

#include "socialmatch/matching.hpp"

namespace socialmatch {

struct OracleLimits {
  int max_exact_n = 22;  // subset DP over 2^n states
  int max_enum_n = 12;   // explicit enumeration of all matchings
};

struct OptimumResult {
  Matching matching;
  Rational value;
};

// Exact maximum-weight matching by dynamic programming over node subsets.
// The witness is the lexicographically least optimal pair list.
// Throws Error(kLimitExceeded) above `max_n` nodes.
OptimumResult max_weight_matching(const GameInstance& inst, int max_n = 22);

// Every matching of the graph (including the empty one), canonically sorted.
std::vector<Matching> enumerate_matchings(const Graph& graph, int max_n = 12);

// Every stable matching, canonically sorted.
std::vector<Matching> enumerate_stable_matchings(const GameInstance& inst,
                                                 int max_n = 12);

// optimum / worst (resp. best) stable value; nullopt when nothing is stable.
// An edgeless instance has ratio 1.
std::optional<Rational> price_of_anarchy(const GameInstance& inst,
                                         const OracleLimits& limits = {});
std::optional<Rational> price_of_stability(const GameInstance& inst,
                                           const OracleLimits& limits = {});

enum class BoundKind { kPoA, kPoS, kParameter };

struct BoundCheck {
  std::string name;
  BoundKind kind = BoundKind::kPoA;
  Rational bound;
  bool evaluated = false;  // false when no stable matching exists
  bool holds = true;
};

struct StableEntry {
  Matching matching;
  Rational value;
};

struct AuditReport {
  Rational optimum;
  Matching optimum_matching;
  std::vector<StableEntry> stable;
  std::optional<Rational> worst_stable;
  std::optional<Rational> best_stable;
  std::optional<Rational> poa;
  std::optional<Rational> pos;
  std::optional<Rational> R;  // absent when some share is zero
  std::optional<Rational> Q;
  std::optional<Rational> Q_prime;
  std::vector<BoundCheck> bounds;

  bool all_hold() const;
  std::vector<std::string> violations() const;
};

// Enumerates stable matchings and checks every bound that applies to the
// instance's sharing rule and friendship vector:
//   equal sharing        PoA <= 2, PoS <= (2+2a1)/(1+2a1+a2)
//   positive shares      PoA, PoS <= 1+Q and Q < Q' <= Q+1
//   no friendship        PoA, PoS <= 1+R
//   trust, no friendship PoA <= 3
AuditReport audit_bounds(const GameInstance& inst, const OracleLimits& limits = {});

}  // namespace socialmatch
