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

// Brute-force reference implementations used only by the tests. They work
// from the definitions (shares from the rule's raw data, perceived utilities
// summed over every node) and never call the library's decision procedures.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "socialmatch/generators.hpp"
#include "socialmatch/instance.hpp"
#include "socialmatch/matching.hpp"
#include "socialmatch/rng.hpp"

namespace oracle {

using socialmatch::EdgeId;
using socialmatch::GameInstance;
using socialmatch::Graph;
using socialmatch::NodeId;
using socialmatch::Rational;
using socialmatch::SharingKind;

using Pairs = std::vector<std::pair<NodeId, NodeId>>;

inline std::vector<std::vector<int>> hop_distances(const Graph& g) {
  const int n = g.num_nodes();
  std::vector<std::vector<int>> adj(n);
  for (const auto& e : g.edges()) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  std::vector<std::vector<int>> d(n, std::vector<int>(n, -1));
  for (int s = 0; s < n; ++s) {
    std::deque<int> queue{s};
    d[s][s] = 0;
    while (!queue.empty()) {
      int x = queue.front();
      queue.pop_front();
      for (int y : adj[x])
        if (d[s][y] < 0) {
          d[s][y] = d[s][x] + 1;
          queue.push_back(y);
        }
    }
  }
  return d;
}

inline Rational alpha_at(const GameInstance& inst, int d) {
  const auto& a = inst.friendship().values();
  if (d < 1 || d > static_cast<int>(a.size())) return 0;
  return a[d - 1];
}

// Share of x on edge e computed straight from the rule's parameters.
inline Rational share(const GameInstance& inst, NodeId x, EdgeId e) {
  const auto& edge = inst.graph().edge(e);
  const NodeId y = edge.other(x);
  const auto& rule = inst.sharing();
  switch (rule.kind) {
    case SharingKind::kEqual: return inst.reward(e) / 2;
    case SharingKind::kOblivious:
      return x == edge.u ? rule.shares[e].first : rule.shares[e].second;
    case SharingKind::kMatthew:
      return inst.reward(e) * rule.lambda[x] / (rule.lambda[x] + rule.lambda[y]);
    case SharingKind::kParasite:
      return inst.reward(e) * rule.lambda[y] / (rule.lambda[x] + rule.lambda[y]);
    case SharingKind::kTrust: return rule.quality[e] + rule.beta[y];
  }
  return 0;
}

// What x collects: the full reward under equal sharing, the share otherwise.
inline Rational payoff(const GameInstance& inst, NodeId x, EdgeId e) {
  if (inst.sharing().kind == SharingKind::kEqual) return inst.reward(e);
  return share(inst, x, e);
}

inline EdgeId edge_of(const GameInstance& inst, NodeId a, NodeId b) {
  for (EdgeId e = 0; e < inst.num_edges(); ++e) {
    const auto& ed = inst.graph().edge(e);
    if ((ed.u == a && ed.v == b) || (ed.u == b && ed.v == a)) return e;
  }
  return -1;
}

inline std::vector<Rational> rewards(const GameInstance& inst, const Pairs& m) {
  std::vector<Rational> r(inst.num_nodes(), 0);
  for (auto [a, b] : m) {
    EdgeId e = edge_of(inst, a, b);
    r[a] = payoff(inst, a, e);
    r[b] = payoff(inst, b, e);
  }
  return r;
}

using AlphaFn = std::function<Rational(NodeId, NodeId)>;

inline Rational utility(const GameInstance& inst, const Pairs& m, NodeId v,
                        const AlphaFn& alpha) {
  auto r = rewards(inst, m);
  Rational u = r[v];
  for (NodeId x = 0; x < inst.num_nodes(); ++x)
    if (x != v) u += alpha(v, x) * r[x];
  return u;
}

inline AlphaFn structural_alpha(const GameInstance& inst) {
  auto d = std::make_shared<std::vector<std::vector<int>>>(hop_distances(inst.graph()));
  return [&inst, d](NodeId a, NodeId b) { return alpha_at(inst, (*d)[a][b]); };
}

inline Pairs without(const Pairs& m, NodeId a, NodeId b) {
  Pairs out;
  for (auto p : m)
    if (p.first != a && p.second != a && p.first != b && p.second != b) out.push_back(p);
  out.emplace_back(std::min(a, b), std::max(a, b));
  std::sort(out.begin(), out.end());
  return out;
}

inline bool together(const Pairs& m, NodeId a, NodeId b) {
  for (auto [x, y] : m)
    if ((x == a && y == b) || (x == b && y == a)) return true;
  return false;
}

// Both strictly gain in perceived utility by pairing up.
inline bool blocking(const GameInstance& inst, const Pairs& m, NodeId a, NodeId b) {
  if (together(m, a, b)) return false;
  auto alpha = structural_alpha(inst);
  Pairs next = without(m, a, b);
  return utility(inst, next, a, alpha) > utility(inst, m, a, alpha) &&
         utility(inst, next, b, alpha) > utility(inst, m, b, alpha);
}

inline std::optional<NodeId> partner_in(const Pairs& m, NodeId a) {
  for (auto [x, y] : m) {
    if (x == a) return y;
    if (y == a) return x;
  }
  return std::nullopt;
}

// Same utility comparison, but when both deviators are matched the weight of
// each on the other's abandoned partner is alpha_2.
inline bool relaxed_blocking(const GameInstance& inst, const Pairs& m, NodeId a, NodeId b) {
  if (together(m, a, b)) return false;
  auto base = structural_alpha(inst);
  auto pa = partner_in(m, a), pb = partner_in(m, b);
  AlphaFn alpha = base;
  if (pa && pb) {
    const Rational a2 = alpha_at(inst, 2);
    NodeId w = *pa, z = *pb;
    alpha = [=](NodeId x, NodeId y) {
      if ((x == a && y == z) || (x == b && y == w)) return a2;
      return base(x, y);
    };
  }
  Pairs next = without(m, a, b);
  return utility(inst, next, a, alpha) > utility(inst, m, a, alpha) &&
         utility(inst, next, b, alpha) > utility(inst, m, b, alpha);
}

inline bool stable(const GameInstance& inst, const Pairs& m) {
  for (const auto& e : inst.graph().edges())
    if (blocking(inst, m, e.u, e.v)) return false;
  return true;
}

// Every matching, pairs sorted.
inline std::vector<Pairs> all_matchings(const Graph& g) {
  std::vector<Pairs> out;
  std::vector<bool> used(g.num_nodes(), false);
  Pairs cur;
  std::function<void(EdgeId)> rec = [&](EdgeId from) {
    out.push_back(cur);
    for (EdgeId e = from; e < g.num_edges(); ++e) {
      const auto& ed = g.edge(e);
      if (used[ed.u] || used[ed.v]) continue;
      used[ed.u] = used[ed.v] = true;
      cur.emplace_back(ed.u, ed.v);
      rec(e + 1);
      cur.pop_back();
      used[ed.u] = used[ed.v] = false;
    }
  };
  rec(0);
  for (auto& m : out) std::sort(m.begin(), m.end());
  std::sort(out.begin(), out.end());
  return out;
}

inline Rational value(const GameInstance& inst, const Pairs& m) {
  Rational v = 0;
  for (auto [a, b] : m) v += inst.reward(edge_of(inst, a, b));
  return v;
}

inline Rational optimum(const GameInstance& inst) {
  Rational best = 0;
  for (const auto& m : all_matchings(inst.graph())) best = std::max(best, value(inst, m));
  return best;
}

inline std::vector<Pairs> stable_set(const GameInstance& inst) {
  std::vector<Pairs> out;
  for (const auto& m : all_matchings(inst.graph()))
    if (stable(inst, m)) out.push_back(m);
  return out;
}

// Random friendship vector with entries on a 1/4 grid, nonincreasing.
inline socialmatch::FriendshipVector random_alpha(socialmatch::Rng& rng, int max_len = 2) {
  int len = static_cast<int>(rng.below(max_len + 1));
  std::vector<Rational> a;
  std::int64_t cap = 4;
  for (int i = 0; i < len; ++i) {
    cap = rng.between(0, cap);
    a.push_back(socialmatch::make_rational(cap, 4));
  }
  return socialmatch::FriendshipVector(std::move(a));
}

inline GameInstance random_instance(std::uint64_t seed, int max_n, SharingKind rule,
                                    bool with_alpha) {
  socialmatch::Rng rng(seed * 7919 + 17);
  socialmatch::RandomSpec spec;
  spec.seed = seed;
  spec.n = static_cast<int>(rng.between(2, max_n));
  spec.density = socialmatch::make_rational(rng.between(2, 8), 10);
  spec.r_min = 1;
  spec.r_max = rng.between(1, 8);
  spec.rule = rule;
  spec.lambda_max = 6;
  spec.beta_max = 4;
  if (with_alpha) spec.alpha = random_alpha(rng);
  return socialmatch::gen_random(spec);
}

}  // namespace oracle
