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

// Command-line front end. Talks to the library only through the C API.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "socialmatch/c_api.h"

namespace {

using Json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;  // usage, IO, parse, limits
constexpr int kExitNegative = 2;  // certified: no stable matching / not an equilibrium

struct Failure {
  std::string message;
};

struct Options {
  std::string input;
  std::string out;
  std::string format = "json";
  std::string alpha;
  std::uint64_t seed = 1;
  bool seed_set = false;
  sm_limits limits = sm_default_limits();
  std::string method;
  std::string prefs = "q";
  std::string start;
  std::string profile;
  std::string matching;
  std::string mode;
  std::string gadget;
  std::vector<std::string> params;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{"cannot read " + path};
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Json parse(const std::string& text, const std::string& where) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Failure{where + ": " + e.what()};
  }
}

// Owns a string returned by the library.
struct LibString {
  char* p = nullptr;
  ~LibString() { sm_string_free(p); }
  std::string str() const { return p ? p : ""; }
};

void check(sm_status status, const std::string& what) {
  if (status != SM_OK) throw Failure{what + ": " + sm_last_error()};
}

Json alpha_array(const std::string& text) {
  Json out = Json::array();
  std::stringstream ss(text);
  std::string piece;
  while (std::getline(ss, piece, ',')) out.push_back(piece);
  return out;
}

// Applies --alpha and --mode to a document before the library sees it.
std::string with_overrides(Json doc, const Options& o) {
  if (!o.alpha.empty()) doc["alpha"] = alpha_array(o.alpha);
  if (!o.mode.empty()) {
    if (!doc.contains("functions")) throw Failure{"--mode applies to contribution games only"};
    doc["mode"] = o.mode;
  }
  return doc.dump();
}

bool is_ccg(const Json& doc) { return doc.is_object() && doc.contains("functions"); }

using InstancePtr = std::unique_ptr<sm_instance, decltype(&sm_instance_free)>;
using CcgPtr = std::unique_ptr<sm_ccg, decltype(&sm_ccg_free)>;

InstancePtr load_instance(const std::string& text) {
  sm_instance* p = nullptr;
  check(sm_instance_from_json(text.c_str(), &p), "instance");
  return {p, &sm_instance_free};
}

CcgPtr load_ccg(const std::string& text) {
  sm_ccg* p = nullptr;
  check(sm_ccg_from_json(text.c_str(), &p), "contribution game");
  return {p, &sm_ccg_free};
}

void write_output(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(o.out, std::ios::binary);
  if (!f) throw Failure{"cannot write " + o.out};
  f << text;
}

std::string plain(const Json& v) {
  if (v.is_null()) return "none";
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

std::string pairs_text(const Json& matching) {
  if (matching.is_null()) return "none";
  std::string s;
  for (const auto& p : matching["pairs"]) {
    if (!s.empty()) s += " ";
    s += "(" + p[0].dump() + "," + p[1].dump() + ")";
  }
  return s.empty() ? "{}" : s;
}

std::string rows(const std::vector<std::pair<std::string, std::string>>& kv) {
  std::size_t width = 0;
  for (const auto& [k, v] : kv) width = std::max(width, k.size());
  std::string out;
  for (const auto& [k, v] : kv) out += k + std::string(width - k.size() + 2, ' ') + v + "\n";
  return out;
}

std::string render(const Options& o, const Json& report,
                   const std::vector<std::pair<std::string, std::string>>& table) {
  return o.format == "table" ? rows(table) : report.dump(2) + "\n";
}

// --- subcommands ---------------------------------------------------------

int cmd_gen(const Options& o) {
  Json params = Json::object();
  for (const auto& kv : o.params) {
    auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) throw Failure{"-p expects key=value, got " + kv};
    std::string key = kv.substr(0, eq), value = kv.substr(eq + 1);
    if (key == "instance") params[key] = read_file(value);
    else params[key] = value;
  }
  if (o.seed_set) params["seed"] = std::to_string(o.seed);
  if (!o.alpha.empty()) params["alpha"] = o.alpha;
  LibString out;
  check(sm_generate(o.gadget.c_str(), params.dump().c_str(), &out.p), "gen " + o.gadget);
  write_output(o, out.str() + "\n");
  return kExitOk;
}

int cmd_solve(const Options& o) {
  Json doc = parse(read_file(o.input), o.input);
  auto inst = load_instance(with_overrides(doc, o));
  std::string method = o.method.empty() ? "brbp" : o.method;
  LibString out;
  check(sm_solve(inst.get(), method.c_str(), o.prefs.c_str(), &o.limits, &out.p), "solve");
  Json report = Json::parse(out.str());
  std::string outcome = report["outcome"];
  std::vector<std::pair<std::string, std::string>> table = {
      {"method", method},
      {"outcome", outcome},
      {"matching", pairs_text(report["matching"])},
      {"value", plain(report["value"])}};
  if (report.contains("trace"))
    table.push_back({"deviations", plain(report["trace"]["steps"])});
  if (report.contains("lemmas")) table.push_back({"lemmas", plain(report["lemmas"]["ok"])});
  if (report.contains("greedy"))
    table.push_back({"edge visits", plain(report["greedy"]["edge_visits"])});
  write_output(o, render(o, report, table));
  if (outcome == "stable") return kExitOk;
  if (outcome == "none") return kExitNegative;
  std::cerr << "solve: " << outcome << "\n";
  return kExitFailure;
}

struct AuditOutcome {
  Json report;
  int exit_code = kExitOk;
};

AuditOutcome audit_document(const Json& doc, const Options& o) {
  LibString out;
  if (is_ccg(doc)) {
    auto game = load_ccg(with_overrides(doc, o));
    check(sm_ccg_report(game.get(), &o.limits, &out.p), "audit");
    Json report = Json::parse(out.str());
    return {report, kExitOk};
  }
  auto inst = load_instance(with_overrides(doc, o));
  check(sm_audit(inst.get(), &o.limits, &out.p), "audit");
  Json report = Json::parse(out.str());
  return {report, report["stable_exists"].get<bool>() ? kExitOk : kExitNegative};
}

std::vector<std::pair<std::string, std::string>> audit_table(const Json& r) {
  if (r.contains("audit")) {
    const Json& a = r["audit"];
    return {{"optimum", plain(a["optimum"])},
            {"equilibria", std::to_string(a["equilibria"].size())},
            {"worst ratio", plain(a["worst_ratio"])},
            {"bound 1+Q", plain(a["bound"])},
            {"applicable", plain(a["bound_applicable"])},
            {"holds", plain(a["holds"])},
            {"forbidden", plain(r["forbidden"])}};
  }
  std::vector<std::pair<std::string, std::string>> t = {
      {"optimum", plain(r["optimum"])},
      {"stable", r["stable_exists"].get<bool>() ? std::to_string(r["stable_count"].get<int>())
                                                : "none"},
      {"PoA", plain(r["poa"])},
      {"PoS", plain(r["pos"])},
      {"R", plain(r["R"])},
      {"Q", plain(r["Q"])},
      {"Q'", plain(r["Q_prime"])}};
  for (const auto& b : r["bounds"])
    t.push_back({b["name"].get<std::string>(),
                 !b["evaluated"].get<bool>() ? "n/a" : b["holds"].get<bool>() ? "pass" : "FAIL"});
  return t;
}

// A manifest lists instance files; they are audited concurrently and
// reported in manifest order.
int audit_manifest(const Json& manifest, const Options& o) {
  namespace fs = std::filesystem;
  const fs::path base = fs::path(o.input).parent_path();
  std::vector<std::string> paths;
  for (const auto& p : manifest["instances"]) {
    if (!p.is_string()) throw Failure{"manifest entries must be paths"};
    fs::path path(p.get<std::string>());
    paths.push_back((path.is_absolute() ? path : base / path).string());
  }
  std::vector<std::future<Json>> jobs;
  for (const auto& path : paths)
    jobs.push_back(std::async(std::launch::async, [&o, path] {
      Json entry = {{"path", path}};
      try {
        AuditOutcome r = audit_document(parse(read_file(path), path), o);
        entry["exit"] = r.exit_code;
        entry["report"] = r.report;
      } catch (const Failure& f) {
        entry["exit"] = kExitFailure;
        entry["error"] = f.message;
      }
      return entry;
    }));
  Json results = Json::array();
  bool any_failure = false, any_negative = false;
  std::string table;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    Json entry = jobs[i].get();
    any_failure = any_failure || entry["exit"] == kExitFailure;
    any_negative = any_negative || entry["exit"] == kExitNegative;
    table += "# " + std::string(manifest["instances"][i]) + "\n";
    table += entry.contains("error") ? "error  " + entry["error"].get<std::string>() + "\n"
                                     : rows(audit_table(entry["report"]));
    results.push_back(std::move(entry));
  }
  Json report = {{"results", results}};
  write_output(o, o.format == "table" ? table : report.dump(2) + "\n");
  if (any_failure) return kExitFailure;
  return any_negative ? kExitNegative : kExitOk;
}

int cmd_audit(const Options& o) {
  Json doc = parse(read_file(o.input), o.input);
  if (doc.is_object() && doc.contains("instances")) return audit_manifest(doc, o);
  AuditOutcome r = audit_document(doc, o);
  write_output(o, render(o, r.report, audit_table(r.report)));
  return r.exit_code;
}

int cmd_dynamics(const Options& o) {
  Json doc = parse(read_file(o.input), o.input);
  auto inst = load_instance(with_overrides(doc, o));
  std::string method = o.method.empty() ? "brbp" : o.method;
  std::string start;
  if (!o.start.empty()) start = read_file(o.start);
  LibString summary, trace;
  check(sm_dynamics(inst.get(), method.c_str(), start.empty() ? nullptr : start.c_str(), o.seed,
                    &o.limits, &summary.p, &trace.p),
        "dynamics");
  Json report = Json::parse(summary.str());
  Json tail = report;
  tail["kind"] = "summary";
  std::string text;
  if (o.format == "table") {
    std::vector<std::pair<std::string, std::string>> t = {
        {"method", method},
        {"steps", plain(report["summary"]["steps"])},
        {"termination", plain(report["summary"]["termination"])},
        {"final", pairs_text(report["final"])},
        {"value", plain(report["value"])},
        {"stable", plain(report["stable"])}};
    if (report.contains("lemmas")) t.push_back({"lemmas", plain(report["lemmas"]["ok"])});
    text = rows(t);
  } else {
    text = trace.str() + tail.dump() + "\n";
  }
  write_output(o, text);
  if (report["summary"]["termination"] == "cap-hit") {
    std::cerr << "dynamics: step cap reached\n";
    return kExitFailure;
  }
  return kExitOk;
}

int ccg_check_profile(const Options& o, sm_ccg* game) {
  LibString out;
  std::string profile = read_file(o.profile);
  check(sm_ccg_check(game, profile.c_str(), &o.limits, &out.p), "check");
  Json report = Json::parse(out.str());
  std::vector<std::pair<std::string, std::string>> t = {
      {"equilibrium", plain(report["equilibrium"])},
      {"certificate", plain(report["certificate"])},
      {"value", plain(report["value"])},
      {"moves checked", plain(report["moves_checked"])}};
  if (!report["witness"].is_null()) {
    const Json& w = report["witness"];
    t.push_back({"witness", plain(w["move"]) + " by " + w["nodes"].dump() + " onto " +
                                w["edges"].dump()});
    t.push_back({"before", w["utility_before"].dump()});
    t.push_back({"after", w["utility_after"].dump()});
  }
  write_output(o, render(o, report, t));
  return report["equilibrium"].get<bool>() ? kExitOk : kExitNegative;
}

int cmd_ccg(const Options& o) {
  Json doc = parse(read_file(o.input), o.input);
  if (!is_ccg(doc)) throw Failure{o.input + " is not a contribution game"};
  auto game = load_ccg(with_overrides(doc, o));
  if (!o.profile.empty()) return ccg_check_profile(o, game.get());
  LibString out;
  check(sm_ccg_report(game.get(), &o.limits, &out.p), "ccg");
  Json report = Json::parse(out.str());
  auto t = audit_table(report);
  if (!report["tight_budget"].is_null()) {
    const Json& tb = report["tight_budget"];
    t.push_back({"tight matching", pairs_text(tb["matching"])});
    t.push_back({"tight value", plain(tb["value"])});
    t.push_back({"tight PE", plain(tb["verdict"]["equilibrium"])});
  }
  write_output(o, render(o, report, t));
  return kExitOk;
}

int cmd_check(const Options& o) {
  Json doc = parse(read_file(o.input), o.input);
  if (is_ccg(doc)) {
    if (o.profile.empty()) throw Failure{"check on a contribution game needs --profile"};
    auto game = load_ccg(with_overrides(doc, o));
    return ccg_check_profile(o, game.get());
  }
  if (o.matching.empty()) throw Failure{"check needs --matching"};
  auto inst = load_instance(with_overrides(doc, o));
  std::string matching = read_file(o.matching);
  LibString out;
  check(sm_check(inst.get(), matching.c_str(), &out.p), "check");
  Json report = Json::parse(out.str());
  std::vector<std::pair<std::string, std::string>> t = {
      {"matching", pairs_text(report["matching"])},
      {"value", plain(report["value"])},
      {"stable", plain(report["stable"])},
      {"relaxed stable", plain(report["relaxed_stable"])}};
  for (const auto& b : report["blocking_pairs"])
    t.push_back({"blocking", b["pair"].dump() + " " + b["kind"].get<std::string>()});
  write_output(o, render(o, report, t));
  return report["stable"].get<bool>() ? kExitOk : kExitNegative;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stable matching with friendship utilities and contribution games"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(sm_version()));
  Options o;

  auto common = [&](CLI::App* sub, bool input) {
    if (input) sub->add_option("input", o.input, "Instance or game JSON")->required();
    sub->add_option("--out,-o", o.out, "Write the report here instead of stdout");
    sub->add_option("--format", o.format, "json or table")
        ->check(CLI::IsMember({"json", "table"}));
    sub->add_option("--alpha", o.alpha, "Friendship vector, e.g. 1/2,1/4");
    sub->add_option("--max-n", o.limits.max_exact_n, "Node cap for the exact optimum")
        ->check(CLI::Range(1, 30));
    sub->add_option("--max-enum", o.limits.max_enum_n, "Node cap for enumeration")
        ->check(CLI::Range(1, 20));
    sub->add_option("--cap", o.limits.cap, "Dynamics step cap (0 = default)");
    sub->add_option("--grid-k", o.limits.grid_k, "Equilibrium grid resolution")
        ->check(CLI::Range(1, 64));
    sub->add_option("--seed", o.seed, "Random seed")->each([&](const std::string&) {
      o.seed_set = true;
    });
  };

  auto* gen = app.add_subcommand("gen", "Generate a gadget or random instance");
  gen->add_option("gadget", o.gadget, "Gadget name")->required();
  gen->add_option("-p,--param", o.params, "Gadget parameter key=value");
  common(gen, false);

  auto* solve = app.add_subcommand("solve", "Find a stable matching");
  common(solve, true);
  solve->add_option("--method", o.method, "brbp, bbp, greedy or srpq")
      ->check(CLI::IsMember({"brbp", "bbp", "greedy", "srpq"}));
  solve->add_option("--prefs", o.prefs, "Greedy preference key: raw or q")
      ->check(CLI::IsMember({"raw", "q"}));

  auto* audit = app.add_subcommand("audit", "Exhaustive efficiency audit");
  common(audit, true);
  audit->add_option("--mode", o.mode, "Budget mode override for games")
      ->check(CLI::IsMember({"atmost", "exact"}));

  auto* dyn = app.add_subcommand("dynamics", "Run deviation dynamics and stream the trace");
  common(dyn, true);
  dyn->add_option("--method", o.method, "brbp, bbp or arbitrary")
      ->check(CLI::IsMember({"brbp", "bbp", "arbitrary"}));
  dyn->add_option("--start", o.start, "Starting matching JSON (bbp, arbitrary)");

  auto* ccg = app.add_subcommand("ccg", "Contribution-game equilibrium report");
  common(ccg, true);
  ccg->add_option("--mode", o.mode, "Budget mode override")
      ->check(CLI::IsMember({"atmost", "exact"}));
  ccg->add_option("--profile", o.profile, "Check this strategy profile instead");

  auto* chk = app.add_subcommand("check", "Certify a matching or strategy profile");
  common(chk, true);
  chk->add_option("--matching", o.matching, "Matching JSON");
  chk->add_option("--profile", o.profile, "Strategy profile JSON");
  chk->add_option("--mode", o.mode, "Budget mode override for games")
      ->check(CLI::IsMember({"atmost", "exact"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitFailure;
  }

  try {
    if (*gen) return cmd_gen(o);
    if (*solve) return cmd_solve(o);
    if (*audit) return cmd_audit(o);
    if (*dyn) return cmd_dynamics(o);
    if (*ccg) return cmd_ccg(o);
    if (*chk) return cmd_check(o);
  } catch (const Failure& f) {
    std::cerr << "error: " << f.message << "\n";
    return kExitFailure;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitFailure;
}
