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

#include "socialmatch/roommates.hpp"

#include <algorithm>
#include <deque>
#include <string>

#include "socialmatch/error.hpp"

namespace socialmatch {

const char* preference_key_name(PreferenceKey key) {
  return key == PreferenceKey::kRaw ? "raw" : "q";
}

Rational preference_value(const GameInstance& inst, PreferenceKey key, NodeId x,
                          EdgeId e) {
  return key == PreferenceKey::kRaw ? Rational(inst.share(x, e)) : inst.q_value(x, e);
}

PreferenceProfile build_preferences(const GameInstance& inst, PreferenceKey key) {
  PreferenceProfile profile;
  profile.key = key;
  profile.lists.resize(inst.num_nodes());
  for (NodeId x = 0; x < inst.num_nodes(); ++x) {
    std::vector<std::pair<Rational, NodeId>> ranked;
    for (EdgeId e : inst.graph().incident(x))
      ranked.emplace_back(preference_value(inst, key, x, e), inst.graph().edge(e).other(x));
    std::stable_sort(ranked.begin(), ranked.end(),
                     [](const auto& a, const auto& b) { return a.first > b.first; });
    for (auto& [k, y] : ranked) profile.lists[x].push_back(y);
  }
  return profile;
}

namespace {

// Arc 2e runs edge.u -> edge.v, arc 2e+1 the reverse. An arc (p -> c) steps
// to (c -> n) when c weakly prefers n to p.
struct ArcGraph {
  std::vector<std::vector<int>> out;
  std::vector<std::vector<bool>> strict;
  std::vector<NodeId> head;
};

ArcGraph build_arc_graph(const GameInstance& inst, PreferenceKey key) {
  const Graph& g = inst.graph();
  const int arcs = 2 * g.num_edges();
  std::vector<Rational> tail_key(arcs);  // key of the arc's head on that edge
  ArcGraph ag;
  ag.out.resize(arcs);
  ag.strict.resize(arcs);
  ag.head.resize(arcs);
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    ag.head[2 * e] = g.edge(e).v;
    ag.head[2 * e + 1] = g.edge(e).u;
    tail_key[2 * e] = preference_value(inst, key, g.edge(e).v, e);
    tail_key[2 * e + 1] = preference_value(inst, key, g.edge(e).u, e);
  }
  for (int a = 0; a < arcs; ++a) {
    const NodeId c = ag.head[a];
    const EdgeId in_edge = a / 2;
    for (EdgeId e : g.incident(c)) {
      if (e == in_edge) continue;
      const int next = g.edge(e).u == c ? 2 * e : 2 * e + 1;
      const Rational k_next = preference_value(inst, key, c, e);
      const int cmp_value = cmp(k_next, tail_key[a]);
      if (cmp_value < 0) continue;
      ag.out[a].push_back(next);
      ag.strict[a].push_back(cmp_value > 0);
    }
  }
  return ag;
}

// Kosaraju with explicit stacks.
std::vector<int> strong_components(const std::vector<std::vector<int>>& out) {
  const int n = static_cast<int>(out.size());
  std::vector<std::vector<int>> rev(n);
  for (int a = 0; a < n; ++a)
    for (int b : out[a]) rev[b].push_back(a);

  std::vector<int> order;
  std::vector<char> seen(n, 0);
  for (int s = 0; s < n; ++s) {
    if (seen[s]) continue;
    std::vector<std::pair<int, std::size_t>> stack{{s, 0}};
    seen[s] = 1;
    while (!stack.empty()) {
      auto& [a, i] = stack.back();
      if (i < out[a].size()) {
        int b = out[a][i++];
        if (!seen[b]) {
          seen[b] = 1;
          stack.emplace_back(b, 0);
        }
      } else {
        order.push_back(a);
        stack.pop_back();
      }
    }
  }
  std::vector<int> comp(n, -1);
  int count = 0;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    if (comp[*it] >= 0) continue;
    std::vector<int> stack{*it};
    comp[*it] = count;
    while (!stack.empty()) {
      int a = stack.back();
      stack.pop_back();
      for (int b : rev[a])
        if (comp[b] < 0) {
          comp[b] = count;
          stack.push_back(b);
        }
    }
    ++count;
  }
  return comp;
}

}  // namespace

std::optional<std::vector<NodeId>> detect_preference_cycle(const GameInstance& inst,
                                                           PreferenceKey key) {
  const ArcGraph ag = build_arc_graph(inst, key);
  const auto comp = strong_components(ag.out);
  const int arcs = static_cast<int>(ag.out.size());
  for (int a = 0; a < arcs; ++a) {
    for (std::size_t i = 0; i < ag.out[a].size(); ++i) {
      const int b = ag.out[a][i];
      if (!ag.strict[a][i] || comp[a] != comp[b]) continue;
      // Shortest path b -> a inside the component closes the walk.
      std::vector<int> parent(arcs, -2);
      std::deque<int> queue{b};
      parent[b] = -1;
      while (!queue.empty() && parent[a] == -2) {
        int x = queue.front();
        queue.pop_front();
        for (int y : ag.out[x])
          if (parent[y] == -2 && comp[y] == comp[a]) {
            parent[y] = x;
            queue.push_back(y);
          }
      }
      std::vector<NodeId> walk;
      for (int x = a; x != -1; x = parent[x]) walk.push_back(ag.head[x]);
      std::reverse(walk.begin(), walk.end());
      return walk;
    }
  }
  return std::nullopt;
}

bool is_key_stable(const GameInstance& inst, PreferenceKey key, const Matching& m) {
  const Graph& g = inst.graph();
  auto current = [&](NodeId x) -> Rational {
    auto e = matched_edge(inst, m, x);
    return e ? preference_value(inst, key, x, *e) : Rational(0);
  };
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    const Edge& ed = g.edge(e);
    if (m.contains(ed.u, ed.v)) continue;
    if (preference_value(inst, key, ed.u, e) > current(ed.u) &&
        preference_value(inst, key, ed.v, e) > current(ed.v))
      return false;
  }
  return true;
}

GreedyResult greedy_mutual_best(const GameInstance& inst, PreferenceKey key) {
  if (auto cycle = detect_preference_cycle(inst, key)) {
    std::string text;
    for (NodeId x : *cycle) text += (text.empty() ? "" : " ") + std::to_string(x);
    throw Error(ErrorCode::kPreferenceCycle, "preference cycle: " + text);
  }
  const Graph& g = inst.graph();
  const int n = g.num_nodes();
  std::vector<std::pair<Rational, Rational>> keys(g.num_edges());
  for (EdgeId e = 0; e < g.num_edges(); ++e)
    keys[e] = {preference_value(inst, key, g.edge(e).u, e),
               preference_value(inst, key, g.edge(e).v, e)};
  auto key_of = [&](NodeId x, EdgeId e) -> const Rational& {
    return g.edge(e).u == x ? keys[e].first : keys[e].second;
  };

  GreedyResult result;
  result.matching = Matching(n);
  std::vector<char> removed(n, 0);
  std::vector<std::optional<Rational>> best(n);
  std::vector<std::vector<EdgeId>> tops(n);  // edges attaining best[x]
  for (;;) {
    // One pass over E builds every remaining node's top set.
    ++result.rounds;
    for (NodeId x = 0; x < n; ++x) {
      best[x].reset();
      tops[x].clear();
    }
    bool live = false;
    for (EdgeId e = 0; e < g.num_edges(); ++e) {
      ++result.edge_visits;
      const Edge& ed = g.edge(e);
      if (removed[ed.u] || removed[ed.v]) continue;
      live = true;
      for (NodeId x : {ed.u, ed.v}) {
        const Rational& k = key_of(x, e);
        if (!best[x] || k > *best[x]) {
          best[x] = k;
          tops[x].assign(1, e);
        } else if (k == *best[x]) {
          tops[x].push_back(e);
        }
      }
    }
    if (!live) break;

    std::optional<std::pair<NodeId, NodeId>> pick;
    for (NodeId x = 0; x < n && !pick; ++x) {
      NodeId partner = -1;
      for (EdgeId e : tops[x]) {
        NodeId y = g.edge(e).other(x);
        if (y > x && key_of(y, e) == *best[y] && (partner < 0 || y < partner))
          partner = y;
      }
      if (partner >= 0) pick = std::make_pair(x, partner);
    }
    if (!pick)
      throw Error(ErrorCode::kPreferenceCycle,
                  "no mutually best pair among remaining nodes");
    result.matching.add(pick->first, pick->second);
    removed[pick->first] = removed[pick->second] = 1;
  }
  return result;
}

std::optional<Matching> solve_srp_q(const GameInstance& inst, const OracleLimits& limits) {
  std::optional<Matching> found;
  if (!detect_preference_cycle(inst, PreferenceKey::kQ)) {
    found = greedy_mutual_best(inst, PreferenceKey::kQ).matching;
  } else {
    for (auto& m : enumerate_matchings(inst.graph(), limits.max_enum_n))
      if (is_key_stable(inst, PreferenceKey::kQ, m)) {
        found = std::move(m);
        break;
      }
  }
  if (found && !is_stable(inst, *found))
    throw Error(ErrorCode::kNotStable,
                "roommates solution is not stable in the friendship game");
  return found;
}

}  // namespace socialmatch
