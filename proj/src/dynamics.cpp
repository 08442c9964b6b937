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

#include "socialmatch/dynamics.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <string>

#include "socialmatch/oracle.hpp"
#include "socialmatch/rng.hpp"

namespace socialmatch {
namespace {

// Edge ids by decreasing reward, then increasing (u, v).
std::vector<EdgeId> best_first_order(const GameInstance& inst) {
  std::vector<EdgeId> order(inst.num_edges());
  for (EdgeId e = 0; e < inst.num_edges(); ++e) order[e] = e;
  std::sort(order.begin(), order.end(), [&](EdgeId a, EdgeId b) {
    int c = cmp(inst.reward(a), inst.reward(b));
    if (c != 0) return c > 0;
    return inst.graph().edge(a) < inst.graph().edge(b);
  });
  return order;
}

std::optional<std::pair<NodeId, NodeId>> first_blocking(
    const GameInstance& inst, const Matching& m, const std::vector<EdgeId>& order,
    bool relaxed) {
  for (EdgeId e : order) {
    const Edge& ed = inst.graph().edge(e);
    if (m.contains(ed.u, ed.v)) continue;
    PairVerdict v = relaxed ? is_relaxed_blocking_pair(inst, m, ed.u, ed.v)
                            : is_improving_pair(inst, m, ed.u, ed.v);
    if (v.blocking) return std::make_pair(ed.u, ed.v);
  }
  return std::nullopt;
}

using Selector =
    std::function<std::optional<std::pair<NodeId, NodeId>>(const Matching&)>;

DynamicsResult run(const GameInstance& inst, const Matching& start,
                   std::uint64_t cap, bool relaxed, const Selector& select) {
  DynamicsResult result;
  DynamicsTrace& trace = result.trace;
  trace.initial = start;
  trace.cap = cap;
  trace.edge_count = inst.num_edges();
  Matching m = start;
  Rational value = matching_value(inst, m);
  int phase = -1;
  for (;;) {
    auto pair = select(m);
    if (!pair) {
      trace.termination = Termination::kStable;
      break;
    }
    if (trace.steps.size() >= cap) {
      trace.termination = Termination::kCapHit;
      break;
    }
    auto [u, v] = *pair;
    Deviation dev = make_deviation(inst, m, u, v, relaxed);
    for (const Edge& e : dev.removed) value -= inst.reward(*inst.graph().find_edge(e.u, e.v));
    m = apply_deviation(m, dev);
    const Rational& r = inst.reward(*inst.graph().find_edge(u, v));
    value += r;
    if (dev.kind == DeviationKind::kRelaxedBiswivel) {
      ++phase;
      trace.phase_starts.push_back(trace.steps.size());
    }
    trace.steps.push_back(TraceStep{std::move(dev), r, value, phase, m});
  }
  result.matching = std::move(m);
  return result;
}

}  // namespace

const char* termination_name(Termination t) {
  return t == Termination::kStable ? "stable" : "cap-hit";
}

std::optional<std::pair<NodeId, NodeId>> best_relaxed_blocking_pair(
    const GameInstance& inst, const Matching& m) {
  return first_blocking(inst, m, best_first_order(inst), true);
}

std::optional<std::pair<NodeId, NodeId>> best_blocking_pair(const GameInstance& inst,
                                                            const Matching& m) {
  return first_blocking(inst, m, best_first_order(inst), false);
}

DynamicsResult run_brbp(const GameInstance& inst, std::optional<std::uint64_t> cap,
                        int max_exact_n) {
  const Matching start = max_weight_matching(inst, max_exact_n).matching;
  const std::uint64_t m = static_cast<std::uint64_t>(inst.num_edges());
  const auto order = best_first_order(inst);
  return run(inst, start, cap.value_or(2 * m * m), true,
             [&](const Matching& cur) { return first_blocking(inst, cur, order, true); });
}

DynamicsResult run_best_blocking_pair(const GameInstance& inst, const Matching& start,
                                      std::uint64_t cap) {
  const auto order = best_first_order(inst);
  return run(inst, start, cap, false,
             [&](const Matching& cur) { return first_blocking(inst, cur, order, false); });
}

DynamicsResult run_arbitrary_dynamics(const GameInstance& inst, const Matching& start,
                                      std::uint64_t seed, std::uint64_t cap) {
  Rng rng(seed);
  return run(inst, start, cap, false,
             [&](const Matching& cur) -> std::optional<std::pair<NodeId, NodeId>> {
               auto report = check_stability(inst, cur);
               if (report.stable) return std::nullopt;
               return report.blocking_pairs[rng.below(report.blocking_pairs.size())];
             });
}

LemmaReport assert_trace_lemmas(const DynamicsTrace& trace) {
  LemmaReport report;
  const auto& steps = trace.steps;
  if (!steps.empty() && steps.front().deviation.kind != DeviationKind::kRelaxedBiswivel) {
    report.first_is_relaxed_biswivel = false;
    report.failures.push_back("first deviation is not a relaxed biswivel");
  }
  if (trace.phase_starts.size() > static_cast<std::size_t>(trace.edge_count)) {
    report.biswivel_count_ok = false;
    report.failures.push_back(std::to_string(trace.phase_starts.size()) +
                              " relaxed biswivels exceed m = " +
                              std::to_string(trace.edge_count));
  }
  std::set<Edge> seen;
  Rational running_min;
  for (std::size_t i = 0, next = 0; i < steps.size(); ++i) {
    const bool is_start = next < trace.phase_starts.size() && trace.phase_starts[next] == i;
    if (is_start) {
      ++next;
      if (!seen.insert(steps[i].deviation.added).second && report.biswivel_edges_distinct) {
        report.biswivel_edges_distinct = false;
        report.failures.push_back("relaxed biswivel repeats an edge at step " +
                                  std::to_string(i));
      }
      if (i > 0 && running_min < steps[i].r && report.reward_ordering_ok) {
        report.reward_ordering_ok = false;
        report.failures.push_back("relaxed biswivel at step " + std::to_string(i) +
                                  " has a larger reward than an earlier deviation");
      }
    } else if (i > 0 && steps[i].phase == steps[i - 1].phase &&
               steps[i].value_after < steps[i - 1].value_after &&
               report.phase_values_monotone) {
      report.phase_values_monotone = false;
      report.failures.push_back("matching value decreases within a phase at step " +
                                std::to_string(i));
    }
    if (i == 0 || steps[i].r < running_min) running_min = steps[i].r;
  }
  return report;
}

}  // namespace socialmatch
