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

#include "socialmatch/json_io.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "socialmatch/error.hpp"

namespace socialmatch {
namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorCode::kParse, what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) bad(std::string("expected an object holding \"") + key + "\"");
  auto it = j.find(key);
  if (it == j.end()) bad(std::string("missing field \"") + key + "\"");
  return *it;
}

int as_int(const Json& j, const char* what) {
  if (!j.is_number_integer()) bad(std::string(what) + " must be an integer");
  return j.get<int>();
}

const Json& as_array(const Json& j, const char* what) {
  if (!j.is_array()) bad(std::string(what) + " must be an array");
  return j;
}

std::vector<Rational> rationals(const Json& j, const char* what) {
  std::vector<Rational> out;
  for (const auto& x : as_array(j, what)) out.push_back(rational_from_json(x));
  return out;
}

Json rational_list(const std::vector<Rational>& xs) {
  Json out = Json::array();
  for (const auto& x : xs) out.push_back(rational_to_json(x));
  return out;
}

std::pair<NodeId, NodeId> node_pair(const Json& j) {
  if (!j.is_array() || j.size() != 2) bad("node pair must be [u, v]");
  return {as_int(j[0], "node id"), as_int(j[1], "node id")};
}

Json pair_json(NodeId a, NodeId b) { return Json::array({a, b}); }

SharingKind sharing_from_name(const std::string& s) {
  if (s == "equal") return SharingKind::kEqual;
  if (s == "oblivious") return SharingKind::kOblivious;
  if (s == "matthew") return SharingKind::kMatthew;
  if (s == "parasite") return SharingKind::kParasite;
  if (s == "trust") return SharingKind::kTrust;
  bad("unknown sharing rule \"" + s + "\"");
}

const char* bound_kind_name(BoundKind k) {
  switch (k) {
    case BoundKind::kPoA: return "poa";
    case BoundKind::kPoS: return "pos";
    case BoundKind::kParameter: return "parameter";
  }
  return "?";
}

BoundKind bound_kind_from_name(const std::string& s) {
  if (s == "poa") return BoundKind::kPoA;
  if (s == "pos") return BoundKind::kPoS;
  if (s == "parameter") return BoundKind::kParameter;
  bad("unknown bound kind \"" + s + "\"");
}

Json optional_rational(const std::optional<Rational>& r) {
  return r ? rational_to_json(*r) : Json(nullptr);
}

std::optional<Rational> optional_rational_from(const Json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return std::nullopt;
  return rational_from_json(*it);
}

template <typename F>
auto guarded(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const nlohmann::json::exception& e) {
    bad(std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace

Rational rational_from_json(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return parse_rational(j.dump());
  if (j.is_number_float()) return parse_rational(j.dump());
  bad("expected a rational (string or number), got " + j.dump());
}

Json rational_to_json(const Rational& r) { return to_string(r); }

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    bad(std::string("invalid JSON: ") + e.what());
  }
}

FriendshipVector friendship_from_json(const Json& j) {
  if (j.is_null()) return {};
  return FriendshipVector(rationals(j, "alpha"));
}

Json friendship_to_json(const FriendshipVector& alpha) { return rational_list(alpha.values()); }

GameInstance instance_from_json(const Json& j) {
  return guarded([&] {
    const int n = as_int(field(j, "nodes"), "nodes");
    std::vector<std::pair<NodeId, NodeId>> edges;
    std::vector<bool> flipped;
    std::vector<std::optional<Rational>> given;
    for (const auto& e : as_array(field(j, "edges"), "edges")) {
      int u = as_int(field(e, "u"), "u"), v = as_int(field(e, "v"), "v");
      edges.emplace_back(u, v);
      flipped.push_back(u > v);
      auto r = e.find("r");
      given.push_back(r == e.end() || r->is_null() ? std::nullopt
                                                   : std::optional(rational_from_json(*r)));
    }
    const Json& sh = field(j, "sharing");
    SharingRule rule;
    rule.kind = sharing_from_name(field(sh, "rule").get<std::string>());
    switch (rule.kind) {
      case SharingKind::kEqual: break;
      case SharingKind::kOblivious:
        for (std::size_t i = 0; const auto& s : as_array(field(sh, "shares"), "shares")) {
          if (!s.is_array() || s.size() != 2) bad("each share entry must be [su, sv]");
          auto a = rational_from_json(s[0]);
          auto b = rational_from_json(s[1]);
          if (i < flipped.size() && flipped[i]) std::swap(a, b);
          rule.shares.emplace_back(std::move(a), std::move(b));
          ++i;
        }
        break;
      case SharingKind::kMatthew:
      case SharingKind::kParasite:
        rule.lambda = rationals(field(sh, "lambda"), "lambda");
        break;
      case SharingKind::kTrust:
        rule.beta = rationals(field(sh, "beta"), "beta");
        rule.quality = rationals(field(sh, "h"), "h");
        break;
    }
    const bool derived =
        rule.kind == SharingKind::kOblivious || rule.kind == SharingKind::kTrust;
    std::vector<Rational> rewards;
    const bool all_given =
        std::all_of(given.begin(), given.end(), [](const auto& r) { return r.has_value(); });
    if (!derived || all_given) {
      for (auto& r : given) {
        if (!r) bad("edge reward \"r\" missing");
        rewards.push_back(*r);
      }
    }
    FriendshipVector alpha;
    if (auto it = j.find("alpha"); it != j.end()) alpha = friendship_from_json(*it);
    return GameInstance(Graph(n, edges), std::move(rewards), std::move(rule),
                        std::move(alpha));
  });
}

Json instance_to_json(const GameInstance& inst) {
  Json edges = Json::array();
  for (EdgeId e = 0; e < inst.num_edges(); ++e) {
    const Edge& ed = inst.graph().edge(e);
    edges.push_back({{"u", ed.u}, {"v", ed.v}, {"r", rational_to_json(inst.reward(e))}});
  }
  const SharingRule& rule = inst.sharing();
  Json sharing = {{"rule", sharing_name(rule.kind)}};
  switch (rule.kind) {
    case SharingKind::kEqual: break;
    case SharingKind::kOblivious: {
      Json shares = Json::array();
      for (const auto& [a, b] : rule.shares)
        shares.push_back(Json::array({rational_to_json(a), rational_to_json(b)}));
      sharing["shares"] = shares;
      break;
    }
    case SharingKind::kMatthew:
    case SharingKind::kParasite:
      sharing["lambda"] = rational_list(rule.lambda);
      break;
    case SharingKind::kTrust:
      sharing["beta"] = rational_list(rule.beta);
      sharing["h"] = rational_list(rule.quality);
      break;
  }
  return {{"nodes", inst.num_nodes()},
          {"edges", edges},
          {"sharing", sharing},
          {"alpha", friendship_to_json(inst.friendship())}};
}

Matching matching_from_json(const Graph& graph, const Json& j) {
  return guarded([&] {
    std::vector<std::pair<NodeId, NodeId>> pairs;
    for (const auto& p : as_array(field(j, "pairs"), "pairs")) pairs.push_back(node_pair(p));
    return Matching::from_pairs(graph, pairs);
  });
}

Json matching_to_json(const Matching& m) {
  Json pairs = Json::array();
  for (auto [a, b] : m.pairs()) pairs.push_back(pair_json(a, b));
  return {{"pairs", pairs}};
}

Json verdict_to_json(const PairVerdict& v) {
  auto side = [](const SideWitness& s) {
    return Json{{"node", s.node},
                {"lhs", rational_to_json(s.lhs)},
                {"rhs", rational_to_json(s.rhs)},
                {"improves", s.improves()}};
  };
  return {{"blocking", v.blocking},
          {"kind", deviation_name(v.kind)},
          {"u_side", side(v.u_side)},
          {"v_side", side(v.v_side)}};
}

Json stability_to_json(const GameInstance& inst, const Matching& m) {
  StabilityReport report = check_stability(inst, m);
  Json blocking = Json::array();
  for (auto [a, b] : report.blocking_pairs) {
    Json entry = verdict_to_json(is_improving_pair(inst, m, a, b));
    entry["pair"] = pair_json(a, b);
    blocking.push_back(entry);
  }
  UtilityProfile profile = utility_profile(inst, m);
  return {{"matching", matching_to_json(m)},
          {"value", rational_to_json(matching_value(inst, m))},
          {"stable", report.stable},
          {"relaxed_stable", is_relaxed_stable(inst, m)},
          {"blocking_pairs", blocking},
          {"rewards", rational_list(profile.reward)},
          {"perceived", rational_list(profile.perceived)}};
}

Json audit_to_json(const AuditReport& report) {
  Json stable = Json::array();
  for (const auto& s : report.stable)
    stable.push_back({{"pairs", matching_to_json(s.matching)["pairs"]},
                      {"value", rational_to_json(s.value)}});
  Json bounds = Json::array();
  for (const auto& b : report.bounds)
    bounds.push_back({{"name", b.name},
                      {"kind", bound_kind_name(b.kind)},
                      {"bound", rational_to_json(b.bound)},
                      {"evaluated", b.evaluated},
                      {"holds", b.holds}});
  return {{"optimum", rational_to_json(report.optimum)},
          {"optimum_matching", matching_to_json(report.optimum_matching)},
          {"nodes", report.optimum_matching.num_nodes()},
          {"stable_count", report.stable.size()},
          {"stable", stable},
          {"worst_stable", optional_rational(report.worst_stable)},
          {"best_stable", optional_rational(report.best_stable)},
          {"poa", optional_rational(report.poa)},
          {"pos", optional_rational(report.pos)},
          {"R", optional_rational(report.R)},
          {"Q", optional_rational(report.Q)},
          {"Q_prime", optional_rational(report.Q_prime)},
          {"bounds", bounds},
          {"all_hold", report.all_hold()}};
}

AuditReport audit_from_json(const Json& j) {
  return guarded([&] {
    AuditReport report;
    const int n = as_int(field(j, "nodes"), "nodes");
    auto matching_of = [n](const Json& pairs) {
      Matching m(n);
      for (const auto& p : as_array(pairs, "pairs")) {
        auto [a, b] = node_pair(p);
        if (a < 0 || b < 0 || a >= n || b >= n || m.is_matched(a) || m.is_matched(b))
          bad("invalid pair in report");
        m.add(a, b);
      }
      return m;
    };
    report.optimum = rational_from_json(field(j, "optimum"));
    report.optimum_matching = matching_of(field(field(j, "optimum_matching"), "pairs"));
    for (const auto& s : as_array(field(j, "stable"), "stable"))
      report.stable.push_back(
          {matching_of(field(s, "pairs")), rational_from_json(field(s, "value"))});
    report.worst_stable = optional_rational_from(j, "worst_stable");
    report.best_stable = optional_rational_from(j, "best_stable");
    report.poa = optional_rational_from(j, "poa");
    report.pos = optional_rational_from(j, "pos");
    report.R = optional_rational_from(j, "R");
    report.Q = optional_rational_from(j, "Q");
    report.Q_prime = optional_rational_from(j, "Q_prime");
    for (const auto& b : as_array(field(j, "bounds"), "bounds")) {
      BoundCheck check;
      check.name = field(b, "name").get<std::string>();
      check.kind = bound_kind_from_name(field(b, "kind").get<std::string>());
      check.bound = rational_from_json(field(b, "bound"));
      check.evaluated = field(b, "evaluated").get<bool>();
      check.holds = field(b, "holds").get<bool>();
      report.bounds.push_back(std::move(check));
    }
    return report;
  });
}

Json lemma_report_to_json(const LemmaReport& report) {
  return {{"ok", report.ok()},
          {"first_is_relaxed_biswivel", report.first_is_relaxed_biswivel},
          {"biswivel_count_ok", report.biswivel_count_ok},
          {"biswivel_edges_distinct", report.biswivel_edges_distinct},
          {"reward_ordering_ok", report.reward_ordering_ok},
          {"phase_values_monotone", report.phase_values_monotone},
          {"failures", report.failures}};
}

std::string trace_to_jsonl(const DynamicsTrace& trace) {
  std::ostringstream out;
  std::size_t next_phase = 0;
  for (std::size_t i = 0; i < trace.steps.size(); ++i) {
    const TraceStep& s = trace.steps[i];
    if (next_phase < trace.phase_starts.size() && trace.phase_starts[next_phase] == i) {
      out << Json{{"kind", "phase"}, {"phase", next_phase}, {"step", i}}.dump() << '\n';
      ++next_phase;
    }
    Json removed = Json::array();
    for (const Edge& e : s.deviation.removed) removed.push_back(pair_json(e.u, e.v));
    out << Json{{"step", i},
                {"kind", deviation_name(s.deviation.kind)},
                {"pair", pair_json(s.deviation.u, s.deviation.v)},
                {"removed", removed},
                {"r", rational_to_json(s.r)},
                {"value", rational_to_json(s.value_after)}}
               .dump()
        << '\n';
  }
  out << Json{{"kind", "end"},
              {"termination", termination_name(trace.termination)},
              {"steps", trace.steps.size()}}
             .dump()
      << '\n';
  return out.str();
}

Json trace_summary_to_json(const DynamicsTrace& trace) {
  std::size_t swivels = 0;
  for (const auto& s : trace.steps)
    if (s.deviation.kind == DeviationKind::kSwivel) ++swivels;
  return {{"steps", trace.steps.size()},
          {"swivels", swivels},
          {"biswivels", trace.steps.size() - swivels},
          {"phases", trace.phase_starts.size()},
          {"termination", termination_name(trace.termination)},
          {"cap", trace.cap},
          {"initial", matching_to_json(trace.initial)}};
}

namespace {

RewardFamily family_from_name(const std::string& s) {
  if (s == "product") return RewardFamily::kProduct;
  if (s == "min") return RewardFamily::kMinLinear;
  if (s == "powprod") return RewardFamily::kPowerProduct;
  bad("unknown reward family \"" + s + "\"");
}

SplitKind split_from_json(const Json& j) {
  std::string name = j.is_string() ? j.get<std::string>() : field(j, "rule").get<std::string>();
  if (name == "equal") return SplitKind::kEqual;
  if (name == "matthew") return SplitKind::kMatthew;
  if (name == "proportional") return SplitKind::kProportional;
  bad("unknown split \"" + name + "\"");
}

BudgetMode mode_from_name(const std::string& s) {
  if (s == "atmost") return BudgetMode::kAtMost;
  if (s == "exact") return BudgetMode::kExact;
  bad("unknown budget mode \"" + s + "\"");
}

}  // namespace

ContributionGame ccg_from_json(const Json& j) {
  return guarded([&] {
    const int n = as_int(field(j, "nodes"), "nodes");
    std::vector<std::pair<NodeId, NodeId>> edges;
    std::vector<RewardFunctionSpec> functions;
    for (const auto& f : as_array(field(j, "functions"), "functions")) {
      edges.push_back(node_pair(field(f, "edge")));
      RewardFunctionSpec spec;
      spec.family = family_from_name(field(f, "family").get<std::string>());
      spec.c = f.contains("c") ? rational_from_json(f["c"]) : Rational(1);
      spec.k = f.contains("k") ? as_int(f["k"], "k") : 1;
      spec.split = f.contains("split") ? split_from_json(f["split"]) : SplitKind::kEqual;
      functions.push_back(spec);
    }
    std::vector<Rational> lambda;
    if (j.contains("lambda")) lambda = rationals(j["lambda"], "lambda");
    FriendshipVector alpha;
    if (j.contains("alpha")) alpha = friendship_from_json(j["alpha"]);
    BudgetMode mode =
        j.contains("mode") ? mode_from_name(j["mode"].get<std::string>()) : BudgetMode::kAtMost;
    return ContributionGame(Graph(n, edges), rationals(field(j, "budgets"), "budgets"),
                            std::move(functions), std::move(alpha), mode, std::move(lambda));
  });
}

Json ccg_to_json(const ContributionGame& game) {
  Json functions = Json::array();
  for (EdgeId e = 0; e < game.num_edges(); ++e) {
    const Edge& ed = game.graph().edge(e);
    const auto& f = game.function(e);
    Json entry = {{"edge", pair_json(ed.u, ed.v)},
                  {"family", family_name(f.family)},
                  {"c", rational_to_json(f.c)}};
    if (f.family == RewardFamily::kPowerProduct) entry["k"] = f.k;
    entry["split"] = split_name(f.split);
    functions.push_back(entry);
  }
  Json out = {{"nodes", game.num_nodes()},
              {"budgets", rational_list(game.budgets())},
              {"mode", budget_mode_name(game.mode())},
              {"alpha", friendship_to_json(game.friendship())}};
  if (!game.lambda().empty()) out["lambda"] = rational_list(game.lambda());
  out["functions"] = functions;
  return out;
}

StrategyProfile profile_from_json(const ContributionGame& game, const Json& j) {
  return guarded([&] {
    StrategyProfile p = zero_profile(game);
    std::vector<bool> seen(game.num_edges(), false);
    for (const auto& a : as_array(field(j, "allocations"), "allocations")) {
      auto [x, y] = node_pair(field(a, "edge"));
      auto e = game.graph().find_edge(x, y);
      if (!e) bad("allocation on a non-edge (" + std::to_string(x) + "," + std::to_string(y) + ")");
      if (seen[*e]) bad("edge listed twice in profile");
      seen[*e] = true;
      Rational sx = rational_from_json(field(a, "su"));
      Rational sy = rational_from_json(field(a, "sv"));
      if (x > y) std::swap(sx, sy);
      p.alloc[*e] = {std::move(sx), std::move(sy)};
    }
    return p;
  });
}

Json profile_to_json(const ContributionGame& game, const StrategyProfile& profile) {
  Json allocations = Json::array();
  for (EdgeId e = 0; e < game.num_edges(); ++e) {
    const Edge& ed = game.graph().edge(e);
    allocations.push_back({{"edge", pair_json(ed.u, ed.v)},
                           {"su", rational_to_json(profile.alloc[e].first)},
                           {"sv", rational_to_json(profile.alloc[e].second)}});
  }
  return {{"allocations", allocations}};
}

Json equilibrium_to_json(const ContributionGame& game, const EquilibriumVerdict& verdict) {
  Json out = {{"equilibrium", verdict.equilibrium},
              {"certificate", verdict.equilibrium ? "grid-certified" : "improving move found"},
              {"grid_k", verdict.grid_k},
              {"moves_checked", verdict.moves_checked}};
  if (verdict.witness) {
    const auto& w = *verdict.witness;
    Json edges = Json::array();
    for (EdgeId e : w.edges) edges.push_back(pair_json(game.graph().edge(e).u, game.graph().edge(e).v));
    out["witness"] = {{"move", move_name(w.kind)},
                      {"nodes", w.nodes},
                      {"edges", edges},
                      {"utility_before", rational_list(w.utility_before)},
                      {"utility_after", rational_list(w.utility_after)},
                      {"profile_after", profile_to_json(game, w.after)}};
  } else {
    out["witness"] = nullptr;
  }
  return out;
}

Json ccg_audit_to_json(const ContributionGame& game, const CcgAuditReport& report) {
  Json equilibria = Json::array();
  for (const auto& e : report.equilibria)
    equilibria.push_back({{"source", e.source},
                          {"value", rational_to_json(e.value)},
                          {"ratio", optional_rational(e.ratio)},
                          {"profile", profile_to_json(game, e.profile)}});
  return {{"optimum", rational_to_json(report.optimum)},
          {"optimum_profile", profile_to_json(game, report.optimum_profile)},
          {"equilibria", equilibria},
          {"worst_ratio", optional_rational(report.worst_ratio)},
          {"Q", optional_rational(report.Q)},
          {"bound", optional_rational(report.bound)},
          {"bound_applicable", report.bound_applicable},
          {"all_convex", game.all_convex()},
          {"holds", report.holds},
          {"local_search_steps", report.local_search_steps}};
}

}  // namespace socialmatch
