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

#include "socialmatch/c_api.h"

#include <cstring>
#include <new>
#include <string>

#include "socialmatch/ccg.hpp"
#include "socialmatch/dynamics.hpp"
#include "socialmatch/error.hpp"
#include "socialmatch/generators.hpp"
#include "socialmatch/json_io.hpp"
#include "socialmatch/oracle.hpp"
#include "socialmatch/roommates.hpp"

struct sm_instance {
  socialmatch::GameInstance inst;
};

struct sm_ccg {
  socialmatch::ContributionGame game;
};

namespace {

using namespace socialmatch;

thread_local std::string g_last_error;

sm_status status_of(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return SM_ERR_INVALID_ARGUMENT;
    case ErrorCode::kParse: return SM_ERR_PARSE;
    case ErrorCode::kLimitExceeded: return SM_ERR_LIMIT;
    case ErrorCode::kNotIncident: return SM_ERR_NOT_INCIDENT;
    case ErrorCode::kUndefinedRatio: return SM_ERR_UNDEFINED_RATIO;
    case ErrorCode::kStaleDeviation: return SM_ERR_STALE_DEVIATION;
    case ErrorCode::kPreferenceCycle: return SM_ERR_PREFERENCE_CYCLE;
    case ErrorCode::kNotStable: return SM_ERR_NOT_STABLE;
  }
  return SM_ERR_INTERNAL;
}

template <typename F>
sm_status guard(F&& f) {
  try {
    g_last_error.clear();
    f();
    return SM_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return status_of(e.code());
  } catch (const nlohmann::json::exception& e) {
    g_last_error = e.what();
    return SM_ERR_PARSE;
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return SM_ERR_LIMIT;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return SM_ERR_INTERNAL;
  }
}

char* dup(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void emit(char** out, const Json& j) { *out = dup(j.dump(2)); }

void require(const void* p, const char* what) {
  if (p == nullptr) throw Error(ErrorCode::kInvalidArgument, std::string(what) + " is null");
}

sm_limits limits_or_default(const sm_limits* limits) {
  return limits ? *limits : sm_default_limits();
}

OracleLimits oracle_limits(const sm_limits& l) { return {l.max_exact_n, l.max_enum_n}; }

std::optional<std::uint64_t> cap_of(const sm_limits& l) {
  if (l.cap == 0) return std::nullopt;
  return l.cap;
}

// --- generator parameters ----------------------------------------------

class Params {
 public:
  explicit Params(const Json& j) : j_(j) {
    if (!j_.is_null() && !j_.is_object()) throw Error(ErrorCode::kParse, "params must be an object");
  }

  bool has(const char* key) const { return j_.is_object() && j_.contains(key); }

  std::string text(const char* key, const std::string& fallback) const {
    if (!has(key)) return fallback;
    const Json& v = j_[key];
    return v.is_string() ? v.get<std::string>() : v.dump();
  }
  Rational rational(const char* key, const Rational& fallback) const {
    return has(key) ? parse_rational(text(key, "")) : fallback;
  }
  std::int64_t integer(const char* key, std::int64_t fallback) const {
    if (!has(key)) return fallback;
    Rational r = rational(key, 0);
    if (r.get_den() != 1 || !r.get_num().fits_slong_p())
      throw Error(ErrorCode::kInvalidArgument, std::string(key) + " must be an integer");
    return r.get_num().get_si();
  }
  std::uint64_t seed() const {
    std::string s = text("seed", "1");
    try {
      std::size_t used = 0;
      auto v = std::stoull(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
      return v;
    } catch (const std::logic_error&) {
      throw Error(ErrorCode::kInvalidArgument, "seed must be a nonnegative integer");
    }
  }
  // "1/2,1/4" or a JSON array.
  FriendshipVector alpha() const {
    if (!has("alpha")) return {};
    const Json& v = j_["alpha"];
    if (v.is_array()) return friendship_from_json(v);
    std::vector<Rational> out;
    std::string s = text("alpha", "");
    std::size_t start = 0;
    while (start <= s.size() && !s.empty()) {
      auto comma = s.find(',', start);
      auto piece = s.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
      out.push_back(parse_rational(piece));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    return FriendshipVector(std::move(out));
  }
  const Json& raw(const char* key) const { return j_.at(key); }

 private:
  Json j_;
};

SharingKind rule_param(const std::string& s) {
  if (s == "equal") return SharingKind::kEqual;
  if (s == "oblivious") return SharingKind::kOblivious;
  if (s == "matthew") return SharingKind::kMatthew;
  if (s == "parasite") return SharingKind::kParasite;
  if (s == "trust") return SharingKind::kTrust;
  throw Error(ErrorCode::kInvalidArgument, "unknown rule \"" + s + "\"");
}

BudgetMode mode_param(const std::string& s) {
  if (s == "atmost") return BudgetMode::kAtMost;
  if (s == "exact") return BudgetMode::kExact;
  throw Error(ErrorCode::kInvalidArgument, "unknown mode \"" + s + "\"");
}

TightVariant variant_param(const std::string& s) {
  if (s == "poa") return TightVariant::kPoA;
  if (s == "pos") return TightVariant::kPoS;
  throw Error(ErrorCode::kInvalidArgument, "variant must be poa or pos");
}

Json generate(const std::string& gadget, const Params& p) {
  if (gadget == "path3") return instance_to_json(gen_path3_equal(p.alpha()));
  if (gadget == "pos-tight")
    return instance_to_json(gen_pos_tight(p.rational("alpha1", make_rational(1, 2)),
                                          p.rational("eps", make_rational(1, 10))));
  if (gadget == "matthew-tight")
    return instance_to_json(gen_matthew_poa_tight(
        p.rational("R", 2), variant_param(p.text("variant", "poa")) == TightVariant::kPoS,
        p.rational("eps", make_rational(1, 10))));
  if (gadget == "friendship-tight")
    return instance_to_json(gen_friendship_rs_tight(
        p.rational("R", 2), p.rational("alpha1", make_rational(1, 2)),
        variant_param(p.text("variant", "poa")), p.rational("eps", make_rational(1, 100))));
  if (gadget == "nonexistence") {
    if (!p.has("seed")) return instance_to_json(gen_nonexistence_friendship_matthew());
    auto found = nonexistence_search(p.seed(), p.integer("max_tries", 1'000'000));
    if (!found.instance)
      throw Error(ErrorCode::kLimitExceeded, "search exhausted after " +
                                                 std::to_string(found.tries) + " tries");
    return instance_to_json(*found.instance);
  }
  if (gadget == "cyclic-triangle") return instance_to_json(gen_cyclic_triangle(p.alpha()));
  if (gadget == "augment") {
    if (!p.has("instance")) throw Error(ErrorCode::kInvalidArgument, "augment needs \"instance\"");
    const Json& doc = p.raw("instance");
    GameInstance base = instance_from_json(doc.is_string() ? parse_json(doc.get<std::string>()) : doc);
    return instance_to_json(
        augment_with_auxiliary_neighbors(base, p.rational("eps", make_rational(1, 100))));
  }
  if (gadget == "random") {
    RandomSpec spec;
    spec.seed = p.seed();
    spec.n = static_cast<int>(p.integer("n", spec.n));
    spec.density = p.rational("density", spec.density);
    spec.r_min = p.integer("r_min", spec.r_min);
    spec.r_max = p.integer("r_max", spec.r_max);
    spec.rule = rule_param(p.text("rule", "equal"));
    spec.lambda_max = p.integer("lambda_max", spec.lambda_max);
    spec.beta_max = p.integer("beta_max", spec.beta_max);
    spec.alpha = p.alpha();
    return instance_to_json(gen_random(spec));
  }
  if (gadget == "tight-budget")
    return ccg_to_json(gen_tight_budget_path(p.rational("eps", make_rational(1, 20)),
                                             p.rational("alpha1", make_rational(1, 2)),
                                             mode_param(p.text("mode", "exact"))));
  if (gadget == "random-ccg") {
    RandomCcgSpec spec;
    spec.seed = p.seed();
    spec.n = static_cast<int>(p.integer("n", spec.n));
    spec.density = p.rational("density", spec.density);
    spec.budget_max = p.integer("budget_max", spec.budget_max);
    spec.c_max = p.integer("c_max", spec.c_max);
    spec.k_max = static_cast<int>(p.integer("k_max", spec.k_max));
    spec.lambda_max = p.integer("lambda_max", spec.lambda_max);
    std::string split = p.text("split", "mixed");
    if (split == "equal") spec.split = SplitKind::kEqual;
    else if (split == "matthew") spec.split = SplitKind::kMatthew;
    else if (split == "proportional") spec.split = SplitKind::kProportional;
    else if (split != "mixed")
      throw Error(ErrorCode::kInvalidArgument, "unknown split \"" + split + "\"");
    spec.mode = mode_param(p.text("mode", "atmost"));
    spec.alpha = p.alpha();
    return ccg_to_json(gen_random_ccg(spec));
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown gadget \"" + gadget + "\"");
}

Json certificate(const GameInstance& inst, const Matching& m) {
  return stability_to_json(inst, m);
}

}  // namespace

extern "C" {

sm_limits sm_default_limits(void) {
  OracleLimits o;
  CcgAuditOptions c;
  return {o.max_exact_n, o.max_enum_n, 0, c.grid_k, c.local_search_cap};
}

const char* sm_last_error(void) { return g_last_error.c_str(); }

const char* sm_version(void) { return "1.0.0"; }

void sm_string_free(char* s) { delete[] s; }

sm_status sm_instance_from_json(const char* json, sm_instance** out) {
  return guard([&] {
    require(json, "json");
    require(out, "out");
    *out = new sm_instance{instance_from_json(parse_json(json))};
  });
}

void sm_instance_free(sm_instance* inst) { delete inst; }

sm_status sm_instance_to_json(const sm_instance* inst, char** out) {
  return guard([&] {
    require(inst, "instance");
    require(out, "out");
    emit(out, instance_to_json(inst->inst));
  });
}

sm_status sm_instance_with_alpha(const sm_instance* inst, const char* alpha_json,
                                 sm_instance** out) {
  return guard([&] {
    require(inst, "instance");
    require(alpha_json, "alpha_json");
    require(out, "out");
    *out = new sm_instance{inst->inst.with_friendship(friendship_from_json(parse_json(alpha_json)))};
  });
}

sm_status sm_solve(const sm_instance* handle, const char* method, const char* prefs,
                   const sm_limits* limits, char** report) {
  return guard([&] {
    require(handle, "instance");
    require(report, "report");
    const GameInstance& inst = handle->inst;
    const sm_limits l = limits_or_default(limits);
    const std::string name = method ? method : "brbp";
    Json out = {{"method", name}};
    std::optional<Matching> result;
    std::string outcome;
    if (name == "brbp" || name == "bbp") {
      DynamicsResult run =
          name == "brbp"
              ? run_brbp(inst, cap_of(l), l.max_exact_n)
              : run_best_blocking_pair(inst, Matching(inst.num_nodes()),
                                       l.cap ? l.cap : kDefaultDynamicsCap);
      out["trace"] = trace_summary_to_json(run.trace);
      if (name == "brbp") out["lemmas"] = lemma_report_to_json(assert_trace_lemmas(run.trace));
      result = run.matching;
      outcome = run.trace.termination == Termination::kCapHit ? "cap-hit" : "stable";
    } else if (name == "greedy") {
      const std::string key = prefs ? prefs : "q";
      if (key != "raw" && key != "q")
        throw Error(ErrorCode::kInvalidArgument, "prefs must be raw or q");
      GreedyResult g = greedy_mutual_best(inst, key == "raw" ? PreferenceKey::kRaw : PreferenceKey::kQ);
      out["prefs"] = key;
      out["greedy"] = {{"rounds", g.rounds}, {"edge_visits", g.edge_visits}};
      result = g.matching;
      outcome = "stable";
    } else if (name == "srpq") {
      result = solve_srp_q(inst, oracle_limits(l));
      outcome = result ? "stable" : "none";
    } else {
      throw Error(ErrorCode::kInvalidArgument, "unknown method \"" + name + "\"");
    }
    if (result) {
      Json cert = certificate(inst, *result);
      if (outcome == "stable" && !cert["stable"].get<bool>()) outcome = "unstable";
      out["matching"] = cert["matching"];
      out["value"] = cert["value"];
      out["certificate"] = cert;
    } else {
      out["matching"] = nullptr;
      out["value"] = nullptr;
    }
    out["outcome"] = outcome;
    emit(report, out);
  });
}

sm_status sm_audit(const sm_instance* handle, const sm_limits* limits, char** report) {
  return guard([&] {
    require(handle, "instance");
    require(report, "report");
    AuditReport a = audit_bounds(handle->inst, oracle_limits(limits_or_default(limits)));
    Json out = audit_to_json(a);
    out["stable_exists"] = !a.stable.empty();
    out["violations"] = a.violations();
    emit(report, out);
  });
}

sm_status sm_dynamics(const sm_instance* handle, const char* method, const char* start_json,
                      uint64_t seed, const sm_limits* limits, char** summary,
                      char** trace_jsonl) {
  return guard([&] {
    require(handle, "instance");
    require(summary, "summary");
    const GameInstance& inst = handle->inst;
    const sm_limits l = limits_or_default(limits);
    const std::string name = method ? method : "brbp";
    Matching start(inst.num_nodes());
    if (start_json) start = matching_from_json(inst.graph(), parse_json(start_json));
    const std::uint64_t cap = l.cap ? l.cap : kDefaultDynamicsCap;
    DynamicsResult run;
    if (name == "brbp") run = run_brbp(inst, cap_of(l), l.max_exact_n);
    else if (name == "bbp") run = run_best_blocking_pair(inst, start, cap);
    else if (name == "arbitrary") run = run_arbitrary_dynamics(inst, start, seed, cap);
    else throw Error(ErrorCode::kInvalidArgument, "unknown method \"" + name + "\"");

    Json out = {{"method", name}};
    if (name == "arbitrary") out["seed"] = seed;
    out["summary"] = trace_summary_to_json(run.trace);
    if (name == "brbp") out["lemmas"] = lemma_report_to_json(assert_trace_lemmas(run.trace));
    out["final"] = matching_to_json(run.matching);
    out["value"] = rational_to_json(matching_value(inst, run.matching));
    out["stable"] = is_stable(inst, run.matching);
    std::string trace = trace_to_jsonl(run.trace);
    emit(summary, out);
    if (trace_jsonl) *trace_jsonl = dup(trace);
  });
}

sm_status sm_check(const sm_instance* handle, const char* matching_json, char** report) {
  return guard([&] {
    require(handle, "instance");
    require(matching_json, "matching_json");
    require(report, "report");
    Matching m = matching_from_json(handle->inst.graph(), parse_json(matching_json));
    emit(report, certificate(handle->inst, m));
  });
}

sm_status sm_generate(const char* gadget, const char* params_json, char** out) {
  return guard([&] {
    require(gadget, "gadget");
    require(out, "out");
    Json params = params_json ? parse_json(params_json) : Json::object();
    emit(out, generate(gadget, Params(params)));
  });
}

sm_status sm_ccg_from_json(const char* json, sm_ccg** out) {
  return guard([&] {
    require(json, "json");
    require(out, "out");
    *out = new sm_ccg{ccg_from_json(parse_json(json))};
  });
}

void sm_ccg_free(sm_ccg* game) { delete game; }

sm_status sm_ccg_to_json(const sm_ccg* game, char** out) {
  return guard([&] {
    require(game, "game");
    require(out, "out");
    emit(out, ccg_to_json(game->game));
  });
}

sm_status sm_ccg_with_alpha(const sm_ccg* game, const char* alpha_json, sm_ccg** out) {
  return guard([&] {
    require(game, "game");
    require(alpha_json, "alpha_json");
    require(out, "out");
    Json doc = ccg_to_json(game->game);
    doc["alpha"] = parse_json(alpha_json);
    *out = new sm_ccg{ccg_from_json(doc)};
  });
}

sm_status sm_ccg_report(const sm_ccg* handle, const sm_limits* limits, char** report) {
  return guard([&] {
    require(handle, "game");
    require(report, "report");
    const ContributionGame& game = handle->game;
    const sm_limits l = limits_or_default(limits);
    CcgAuditOptions options;
    options.limits = oracle_limits(l);
    options.grid_k = l.grid_k;
    options.local_search_cap = l.local_search_cap;

    Json out = {{"mode", budget_mode_name(game.mode())},
                {"corresponding", instance_to_json(corresponding_matching_game(game))}};
    CcgAuditReport audit = ccg_audit(game, options);
    out["audit"] = ccg_audit_to_json(game, audit);

    bool tight_applicable = game.mode() == BudgetMode::kExact && game.friendship().is_local();
    for (const auto& f : game.functions())
      tight_applicable = tight_applicable && f.split == SplitKind::kEqual;
    if (tight_applicable) {
      auto edge_pair = [&](EdgeId e) {
        return Json::array({game.graph().edge(e).u, game.graph().edge(e).v});
      };
      TightBudgetResult tb = tight_budget_equilibrium(game, l.max_exact_n);
      Json forbidden = Json::array();
      for (EdgeId e : tb.forbidden) forbidden.push_back(edge_pair(e));
      out["forbidden"] = forbidden;
      EquilibriumVerdict verdict = is_pairwise_equilibrium(game, tb.profile, l.grid_k);
      Rational value = total_reward(game, tb.profile);
      out["tight_budget"] = {
          {"matching", matching_to_json(tb.matching)},
          {"termination", termination_name(tb.termination)},
          {"profile", profile_to_json(game, tb.profile)},
          {"value", rational_to_json(value)},
          {"ratio", value > 0 ? rational_to_json(Rational(audit.optimum / value))
                              : Json(nullptr)},
          {"verdict", equilibrium_to_json(game, verdict)}};
    } else {
      out["forbidden"] = nullptr;
      out["tight_budget"] = nullptr;
    }
    emit(report, out);
  });
}

sm_status sm_ccg_check(const sm_ccg* handle, const char* profile_json, const sm_limits* limits,
                       char** report) {
  return guard([&] {
    require(handle, "game");
    require(profile_json, "profile_json");
    require(report, "report");
    const ContributionGame& game = handle->game;
    StrategyProfile profile = profile_from_json(game, parse_json(profile_json));
    validate_profile(game, profile);
    EquilibriumVerdict verdict =
        is_pairwise_equilibrium(game, profile, limits_or_default(limits).grid_k);
    Json out = equilibrium_to_json(game, verdict);
    out["value"] = rational_to_json(total_reward(game, profile));
    Json utilities = Json::array();
    for (NodeId v = 0; v < game.num_nodes(); ++v)
      utilities.push_back(rational_to_json(perceived_utility(game, profile, v)));
    out["utilities"] = utilities;
    emit(report, out);
  });
}

}  // extern "C"
