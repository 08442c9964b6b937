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

#include "socialmatch/oracle.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <string>

#include "socialmatch/error.hpp"

namespace socialmatch {
namespace {

void require_size(int n, int max_n, const char* what) {
  if (n > max_n)
    throw Error(ErrorCode::kLimitExceeded,
                std::string(what) + ": " + std::to_string(n) +
                    " nodes exceeds the configured limit of " + std::to_string(max_n));
}

// best[mask] = heaviest matching on the node set `mask`.
template <typename Weight>
Matching solve_subsets(const Graph& g, const std::vector<Weight>& w) {
  const int n = g.num_nodes();
  const std::uint32_t full = n == 0 ? 0u : (n == 32 ? ~0u : ((1u << n) - 1));
  std::vector<Weight> best(static_cast<std::size_t>(full) + 1, Weight(0));
  for (std::uint32_t mask = 1; mask <= full && mask != 0; ++mask) {
    const int low = __builtin_ctz(mask);
    const std::uint32_t rest = mask & (mask - 1);
    Weight value = best[rest];
    for (EdgeId e : g.incident(low)) {
      const NodeId j = g.edge(e).other(low);
      if (!(rest >> j & 1u)) continue;
      Weight candidate = best[rest & ~(1u << j)] + w[e];
      if (candidate > value) value = candidate;
    }
    best[mask] = value;
    if (mask == full) break;
  }

  Matching m(n);
  std::uint32_t mask = full;
  while (mask != 0) {
    const int low = __builtin_ctz(mask);
    const std::uint32_t rest = mask & (mask - 1);
    bool matched = false;
    for (EdgeId e : g.incident(low)) {  // increasing neighbor order
      const NodeId j = g.edge(e).other(low);
      if (!(rest >> j & 1u)) continue;
      if (best[rest & ~(1u << j)] + w[e] == best[mask]) {
        m.add(low, j);
        mask = rest & ~(1u << j);
        matched = true;
        break;
      }
    }
    if (!matched) mask = rest;
  }
  return m;
}

void enumerate_from(const Graph& g, Matching& current, NodeId next,
                    std::vector<Matching>& out) {
  const int n = g.num_nodes();
  while (next < n && current.is_matched(next)) ++next;
  if (next >= n) {
    out.push_back(current);
    return;
  }
  enumerate_from(g, current, next + 1, out);
  for (EdgeId e : g.incident(next)) {
    NodeId j = g.edge(e).other(next);
    if (j < next || current.is_matched(j)) continue;
    current.add(next, j);
    enumerate_from(g, current, next + 1, out);
    current.remove(next);
  }
}

}  // namespace

OptimumResult max_weight_matching(const GameInstance& inst, int max_n) {
  const Graph& g = inst.graph();
  require_size(g.num_nodes(), std::min(max_n, 30), "exact optimum");

  // Scale to integers; stay in 64-bit arithmetic whenever the total fits.
  mpz_class lcm = 1;
  for (const Rational& r : inst.rewards())
    mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), r.get_den_mpz_t());
  mpz_class total = 0;
  std::vector<mpz_class> scaled;
  scaled.reserve(inst.num_edges());
  for (const Rational& r : inst.rewards()) {
    scaled.push_back(r.get_num() * (lcm / r.get_den()));
    total += scaled.back();
  }

  OptimumResult result;
  if (mpz_sizeinbase(total.get_mpz_t(), 2) < 62) {
    std::vector<std::int64_t> w;
    w.reserve(scaled.size());
    for (const auto& z : scaled) w.push_back(z.get_si());
    result.matching = solve_subsets(g, w);
  } else {
    result.matching = solve_subsets(g, inst.rewards());
  }
  result.value = matching_value(inst, result.matching);
  return result;
}

std::vector<Matching> enumerate_matchings(const Graph& graph, int max_n) {
  require_size(graph.num_nodes(), max_n, "matching enumeration");
  std::vector<Matching> out;
  Matching current(graph.num_nodes());
  enumerate_from(graph, current, 0, out);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Matching> enumerate_stable_matchings(const GameInstance& inst,
                                                 int max_n) {
  std::vector<Matching> out;
  for (auto& m : enumerate_matchings(inst.graph(), max_n))
    if (is_stable(inst, m)) out.push_back(std::move(m));
  return out;
}

namespace {

std::optional<Rational> stable_ratio(const GameInstance& inst,
                                     const OracleLimits& limits, bool worst) {
  auto stable = enumerate_stable_matchings(inst, limits.max_enum_n);
  if (stable.empty()) return std::nullopt;
  Rational opt = max_weight_matching(inst, limits.max_exact_n).value;
  std::optional<Rational> pick;
  for (const auto& m : stable) {
    Rational v = matching_value(inst, m);
    if (!pick || (worst ? v < *pick : v > *pick)) pick = v;
  }
  if (opt == 0) return Rational(1);
  return Rational(opt / *pick);
}

}  // namespace

std::optional<Rational> price_of_anarchy(const GameInstance& inst,
                                         const OracleLimits& limits) {
  return stable_ratio(inst, limits, true);
}

std::optional<Rational> price_of_stability(const GameInstance& inst,
                                           const OracleLimits& limits) {
  return stable_ratio(inst, limits, false);
}

bool AuditReport::all_hold() const {
  return std::all_of(bounds.begin(), bounds.end(),
                     [](const BoundCheck& b) { return b.holds; });
}

std::vector<std::string> AuditReport::violations() const {
  std::vector<std::string> out;
  for (const auto& b : bounds)
    if (!b.holds) out.push_back(b.name);
  return out;
}

AuditReport audit_bounds(const GameInstance& inst, const OracleLimits& limits) {
  AuditReport report;
  auto opt = max_weight_matching(inst, limits.max_exact_n);
  report.optimum = opt.value;
  report.optimum_matching = opt.matching;
  for (auto& m : enumerate_stable_matchings(inst, limits.max_enum_n)) {
    Rational v = matching_value(inst, m);
    if (!report.worst_stable || v < *report.worst_stable) report.worst_stable = v;
    if (!report.best_stable || v > *report.best_stable) report.best_stable = v;
    report.stable.push_back({std::move(m), std::move(v)});
  }
  if (report.worst_stable) {
    if (report.optimum == 0) {
      report.poa = Rational(1);
      report.pos = Rational(1);
    } else {
      // A zero-value stable matching against a positive optimum has no finite
      // ratio; the ratio stays unset and its bounds are not evaluated.
      if (*report.worst_stable > 0) report.poa = Rational(report.optimum / *report.worst_stable);
      if (*report.best_stable > 0) report.pos = Rational(report.optimum / *report.best_stable);
    }
  }

  const Rational& a1 = inst.friendship().alpha1();
  const Rational& a2 = inst.friendship().alpha2();
  auto add = [&](std::string name, BoundKind kind, Rational bound) {
    BoundCheck check;
    check.name = std::move(name);
    check.kind = kind;
    check.bound = std::move(bound);
    const auto& ratio = kind == BoundKind::kPoA ? report.poa : report.pos;
    check.evaluated = ratio.has_value();
    check.holds = !ratio || *ratio <= check.bound;
    report.bounds.push_back(std::move(check));
  };

  if (inst.sharing().kind == SharingKind::kEqual) {
    add("PoA <= 2", BoundKind::kPoA, 2);
    add("PoS <= (2+2a1)/(1+2a1+a2)", BoundKind::kPoS,
        (2 + 2 * a1) / (1 + 2 * a1 + a2));
  }
  if (inst.ratio_defined()) {
    report.R = inst.compute_R();
    report.Q = inst.compute_Q();
    report.Q_prime = inst.compute_Q_prime();
    add("PoA <= 1+Q", BoundKind::kPoA, 1 + *report.Q);
    add("PoS <= 1+Q", BoundKind::kPoS, 1 + *report.Q);
    if (inst.friendship().is_zero()) {
      add("PoA <= 1+R", BoundKind::kPoA, 1 + *report.R);
      add("PoS <= 1+R", BoundKind::kPoS, 1 + *report.R);
    }
    BoundCheck sandwich;
    sandwich.name = "Q < Q' <= Q+1";
    sandwich.kind = BoundKind::kParameter;
    sandwich.bound = *report.Q + 1;
    sandwich.evaluated = true;
    sandwich.holds = *report.Q < *report.Q_prime && *report.Q_prime <= *report.Q + 1;
    report.bounds.push_back(std::move(sandwich));
  }
  if (inst.sharing().kind == SharingKind::kTrust && inst.friendship().is_zero())
    add("PoA <= 3", BoundKind::kPoA, 3);

  BoundCheck consistency;
  consistency.name = "PoS <= PoA and optimum >= stable values";
  consistency.kind = BoundKind::kParameter;
  consistency.evaluated = report.poa.has_value();
  consistency.holds = !report.poa || (*report.pos <= *report.poa &&
                                      report.optimum >= *report.best_stable);
  if (report.best_stable) consistency.holds = consistency.holds && report.optimum >= *report.best_stable;
  consistency.bound = report.poa.value_or(Rational(0));
  report.bounds.push_back(std::move(consistency));
  return report;
}

}  // namespace socialmatch
