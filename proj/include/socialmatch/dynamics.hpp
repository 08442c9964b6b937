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

#include "socialmatch/matching.hpp"

namespace socialmatch {

enum class Termination { kStable, kCapHit };

const char* termination_name(Termination t);

struct TraceStep {
  Deviation deviation;
  Rational r;            // reward of the added edge
  Rational value_after;  // matching value after the step
  int phase = -1;        // index of the enclosing relaxed-biswivel phase
  Matching after;
};

struct DynamicsTrace {
  Matching initial;
  std::vector<TraceStep> steps;
  std::vector<std::size_t> phase_starts;  // step indices of relaxed biswivels
  Termination termination = Termination::kStable;
  std::uint64_t cap = 0;
  int edge_count = 0;
};

struct DynamicsResult {
  Matching matching;
  DynamicsTrace trace;
};

// Relaxed blocking pair with the largest r_uv; ties go to the
// lexicographically smallest (u, v).
std::optional<std::pair<NodeId, NodeId>> best_relaxed_blocking_pair(
    const GameInstance& inst, const Matching& m);

// Same selection over ordinary blocking pairs.
std::optional<std::pair<NodeId, NodeId>> best_blocking_pair(const GameInstance& inst,
                                                            const Matching& m);

// Starts from the lexicographically least maximum-weight matching and applies
// best relaxed blocking pairs until none is left. Deviations where both nodes
// were matched are recorded as relaxed biswivels. Default cap is 2m^2; for
// rules other than equal sharing the cap may be hit, which the trace reports.
DynamicsResult run_brbp(const GameInstance& inst,
                        std::optional<std::uint64_t> cap = std::nullopt,
                        int max_exact_n = 22);

inline constexpr std::uint64_t kDefaultDynamicsCap = 1'000'000;

DynamicsResult run_best_blocking_pair(const GameInstance& inst, const Matching& start,
                                      std::uint64_t cap = kDefaultDynamicsCap);

// Uniformly random blocking pair at each step.
DynamicsResult run_arbitrary_dynamics(const GameInstance& inst, const Matching& start,
                                      std::uint64_t seed,
                                      std::uint64_t cap = kDefaultDynamicsCap);

struct LemmaReport {
  bool first_is_relaxed_biswivel = true;
  bool biswivel_count_ok = true;  // at most m
  bool biswivel_edges_distinct = true;
  bool reward_ordering_ok = true;  // r_e(k) >= r_e(j) for k < j, O_j a biswivel
  bool phase_values_monotone = true;
  std::vector<std::string> failures;

  bool ok() const { return failures.empty(); }
};

// Structural checks on a BRBP trace.
LemmaReport assert_trace_lemmas(const DynamicsTrace& trace);

}  // namespace socialmatch
