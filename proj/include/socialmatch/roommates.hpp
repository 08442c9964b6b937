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
#include <vector>

#include "socialmatch/matching.hpp"
#include "socialmatch/oracle.hpp"

namespace socialmatch {

// Raw: node x ranks edge e by its share r^x_e. Q: by q^x_e.
enum class PreferenceKey { kRaw, kQ };

const char* preference_key_name(PreferenceKey key);

Rational preference_value(const GameInstance& inst, PreferenceKey key, NodeId x,
                          EdgeId e);

struct PreferenceProfile {
  PreferenceKey key = PreferenceKey::kRaw;
  // Neighbors by decreasing key, equal keys by increasing id.
  std::vector<std::vector<NodeId>> lists;
};

PreferenceProfile build_preferences(const GameInstance& inst, PreferenceKey key);

// Searches for a closed walk u1 .. uk (no immediate backtracking) where every
// node weakly prefers its successor to its predecessor and at least one
// preference is strict. Returns the walk, first node not repeated at the end.
std::optional<std::vector<NodeId>> detect_preference_cycle(const GameInstance& inst,
                                                           PreferenceKey key);

// Stable-roommates semantics under the key: (x,y) blocks when both strictly
// prefer each other to their current edge; an unmatched node accepts any
// strictly positive key.
bool is_key_stable(const GameInstance& inst, PreferenceKey key, const Matching& m);

struct GreedyResult {
  Matching matching;
  int rounds = 0;                 // edge passes, one per matched pair plus a final one
  std::uint64_t edge_visits = 0;  // edges examined over all passes
};

// Repeatedly matches the lexicographically smallest mutually-best pair among
// the remaining nodes. Throws Error(kPreferenceCycle) when the key admits a
// preference cycle.
GreedyResult greedy_mutual_best(const GameInstance& inst, PreferenceKey key);

// Stable matching of the q-keyed roommates problem: greedy when the q-keys
// have no preference cycle, exhaustive search otherwise. The result is
// checked with is_stable before it is returned; nullopt if none exists.
std::optional<Matching> solve_srp_q(const GameInstance& inst,
                                    const OracleLimits& limits = {});

}  // namespace socialmatch
