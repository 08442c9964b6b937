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

#include "socialmatch/matching.hpp"

#include <algorithm>
#include <string>

#include "socialmatch/error.hpp"

namespace socialmatch {

Matching Matching::from_pairs(const Graph& graph,
                              const std::vector<std::pair<NodeId, NodeId>>& pairs) {
  Matching m(graph.num_nodes());
  for (auto [a, b] : pairs) {
    if (!graph.valid_node(a) || !graph.valid_node(b) || !graph.adjacent(a, b))
      throw Error(ErrorCode::kInvalidArgument,
                  "matched pair (" + std::to_string(a) + "," + std::to_string(b) +
                      ") is not an edge");
    if (m.is_matched(a) || m.is_matched(b))
      throw Error(ErrorCode::kInvalidArgument,
                  "node matched twice in pair (" + std::to_string(a) + "," +
                      std::to_string(b) + ")");
    m.add(a, b);
  }
  return m;
}

std::vector<std::pair<NodeId, NodeId>> Matching::pairs() const {
  std::vector<std::pair<NodeId, NodeId>> out;
  for (NodeId v = 0; v < num_nodes(); ++v)
    if (partner_[v] > v) out.emplace_back(v, partner_[v]);
  return out;
}

int Matching::size() const {
  int count = 0;
  for (NodeId v = 0; v < num_nodes(); ++v)
    if (partner_[v] > v) ++count;
  return count;
}

std::optional<EdgeId> matched_edge(const GameInstance& inst, const Matching& m,
                                   NodeId v) {
  auto p = m.partner(v);
  if (!p) return std::nullopt;
  return inst.graph().find_edge(v, *p);
}

Rational node_reward(const GameInstance& inst, const Matching& m, NodeId v) {
  auto e = matched_edge(inst, m, v);
  if (!e) return 0;
  return inst.payoff(v, *e);
}

Rational perceived_utility(const GameInstance& inst, const Matching& m, NodeId v) {
  Rational total = node_reward(inst, m, v);
  for (NodeId u = 0; u < inst.num_nodes(); ++u) {
    if (u == v) continue;
    const Rational& a = inst.alpha_between(v, u);
    if (a == 0) continue;
    total += a * node_reward(inst, m, u);
  }
  return total;
}

UtilityProfile utility_profile(const GameInstance& inst, const Matching& m) {
  const int n = inst.num_nodes();
  UtilityProfile profile;
  profile.reward.resize(n);
  for (NodeId v = 0; v < n; ++v) profile.reward[v] = node_reward(inst, m, v);
  profile.perceived = profile.reward;
  for (NodeId v = 0; v < n; ++v)
    for (NodeId u = 0; u < n; ++u)
      if (u != v) profile.perceived[v] += inst.alpha_between(v, u) * profile.reward[u];
  return profile;
}

Rational matching_value(const GameInstance& inst, const Matching& m) {
  Rational total = 0;
  for (auto [a, b] : m.pairs()) total += inst.reward(*inst.graph().find_edge(a, b));
  return total;
}

const char* deviation_name(DeviationKind kind) {
  switch (kind) {
    case DeviationKind::kSwivel: return "swivel";
    case DeviationKind::kBiswivel: return "biswivel";
    case DeviationKind::kRelaxedBiswivel: return "relaxed-biswivel";
  }
  return "?";
}

Deviation make_deviation(const GameInstance& inst, const Matching& m, NodeId u,
                         NodeId v, bool relaxed) {
  auto e = inst.graph().find_edge(u, v);
  if (!e)
    throw Error(ErrorCode::kInvalidArgument,
                "(" + std::to_string(u) + "," + std::to_string(v) + ") is not an edge");
  Deviation dev;
  dev.u = u;
  dev.v = v;
  dev.added = inst.graph().edge(*e);
  for (NodeId x : {u, v})
    if (auto p = m.partner(x); p && *p != u && *p != v)
      dev.removed.push_back(Edge{std::min(x, *p), std::max(x, *p)});
  if (dev.removed.size() == 2)
    dev.kind = relaxed ? DeviationKind::kRelaxedBiswivel : DeviationKind::kBiswivel;
  else
    dev.kind = DeviationKind::kSwivel;
  return dev;
}

Matching apply_deviation(const Matching& m, const Deviation& dev) {
  auto stale = [&](const std::string& why) {
    throw Error(ErrorCode::kStaleDeviation,
                "deviation (" + std::to_string(dev.u) + "," + std::to_string(dev.v) +
                    ") does not apply: " + why);
  };
  if (m.contains(dev.u, dev.v)) stale("pair already matched");
  for (const Edge& e : dev.removed)
    if (!m.contains(e.u, e.v)) stale("removed edge not in matching");
  for (NodeId x : {dev.u, dev.v}) {
    auto p = m.partner(x);
    if (!p) continue;
    Edge current{std::min(x, *p), std::max(x, *p)};
    bool listed = false;
    for (const Edge& e : dev.removed) listed = listed || e == current;
    if (!listed) stale("current edge of node " + std::to_string(x) + " not listed");
  }
  const bool both = m.is_matched(dev.u) && m.is_matched(dev.v);
  if ((dev.kind == DeviationKind::kSwivel) == both) stale("kind mismatch");

  Matching out = m;
  out.remove(dev.u);
  out.remove(dev.v);
  out.add(dev.u, dev.v);
  return out;
}

namespace {

SideWitness side(const GameInstance& inst, const Matching& m, NodeId x, NodeId y,
                 EdgeId e_xy, bool relaxed_cross) {
  const Graph& g = inst.graph();
  SideWitness w;
  w.node = x;
  w.lhs = inst.payoff_q(x, e_xy);
  w.rhs = 0;
  if (auto xp = m.partner(x)) w.rhs += inst.payoff_q(x, *g.find_edge(x, *xp));
  if (auto yp = m.partner(y)) {
    EdgeId e_y = *g.find_edge(y, *yp);
    const Rational& cross =
        relaxed_cross ? inst.friendship().alpha2() : inst.alpha_between(x, *yp);
    w.rhs += inst.friendship().alpha1() * inst.payoff(y, e_y);
    if (cross != 0) w.rhs += cross * inst.payoff(*yp, e_y);
  }
  return w;
}

PairVerdict evaluate(const GameInstance& inst, const Matching& m, NodeId u,
                     NodeId v, bool relaxed) {
  auto e = inst.graph().find_edge(u, v);
  if (!e)
    throw Error(ErrorCode::kInvalidArgument,
                "(" + std::to_string(u) + "," + std::to_string(v) + ") is not an edge");
  PairVerdict verdict;
  verdict.u_side.node = u;
  verdict.v_side.node = v;
  if (m.contains(u, v)) return verdict;

  const bool both = m.is_matched(u) && m.is_matched(v);
  verdict.kind = both ? (relaxed ? DeviationKind::kRelaxedBiswivel
                                 : DeviationKind::kBiswivel)
                      : DeviationKind::kSwivel;
  const bool relaxed_cross = relaxed && both;
  verdict.u_side = side(inst, m, u, v, *e, relaxed_cross);
  verdict.v_side = side(inst, m, v, u, *e, relaxed_cross);
  verdict.blocking = verdict.u_side.improves() && verdict.v_side.improves();
  return verdict;
}

// Cheap path for scans: stops after the first side that fails.
bool blocks(const GameInstance& inst, const Matching& m, EdgeId e, bool relaxed) {
  const Edge& ed = inst.graph().edge(e);
  if (m.contains(ed.u, ed.v)) return false;
  const bool relaxed_cross = relaxed && m.is_matched(ed.u) && m.is_matched(ed.v);
  if (!side(inst, m, ed.u, ed.v, e, relaxed_cross).improves()) return false;
  return side(inst, m, ed.v, ed.u, e, relaxed_cross).improves();
}

}  // namespace

PairVerdict is_improving_pair(const GameInstance& inst, const Matching& m,
                              NodeId u, NodeId v) {
  return evaluate(inst, m, u, v, false);
}

PairVerdict is_relaxed_blocking_pair(const GameInstance& inst, const Matching& m,
                                     NodeId u, NodeId v) {
  return evaluate(inst, m, u, v, true);
}

StabilityReport check_stability(const GameInstance& inst, const Matching& m) {
  StabilityReport report;
  for (EdgeId e = 0; e < inst.num_edges(); ++e) {
    if (blocks(inst, m, e, false)) {
      const Edge& ed = inst.graph().edge(e);
      report.blocking_pairs.emplace_back(ed.u, ed.v);
    }
  }
  std::sort(report.blocking_pairs.begin(), report.blocking_pairs.end());
  report.stable = report.blocking_pairs.empty();
  return report;
}

bool is_stable(const GameInstance& inst, const Matching& m) {
  for (EdgeId e = 0; e < inst.num_edges(); ++e)
    if (blocks(inst, m, e, false)) return false;
  return true;
}

bool is_relaxed_stable(const GameInstance& inst, const Matching& m) {
  for (EdgeId e = 0; e < inst.num_edges(); ++e)
    if (blocks(inst, m, e, true)) return false;
  return true;
}

}  // namespace socialmatch
