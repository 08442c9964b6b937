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

#include <memory>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "socialmatch/c_api.h"

namespace {

using Json = nlohmann::ordered_json;

// Takes ownership of a library string.
std::string take(char* s) {
  REQUIRE(s != nullptr);
  std::string out(s);
  sm_string_free(s);
  return out;
}

struct InstanceDeleter {
  void operator()(sm_instance* p) const { sm_instance_free(p); }
};
struct CcgDeleter {
  void operator()(sm_ccg* p) const { sm_ccg_free(p); }
};
using InstancePtr = std::unique_ptr<sm_instance, InstanceDeleter>;
using CcgPtr = std::unique_ptr<sm_ccg, CcgDeleter>;

std::string generate(const char* gadget, const char* params = nullptr) {
  char* out = nullptr;
  REQUIRE(sm_generate(gadget, params, &out) == SM_OK);
  return take(out);
}

InstancePtr load(const std::string& json) {
  sm_instance* p = nullptr;
  REQUIRE(sm_instance_from_json(json.c_str(), &p) == SM_OK);
  return InstancePtr(p);
}

CcgPtr load_ccg(const std::string& json) {
  sm_ccg* p = nullptr;
  REQUIRE(sm_ccg_from_json(json.c_str(), &p) == SM_OK);
  return CcgPtr(p);
}

}  // namespace

TEST_CASE("c api: lifecycle and errors") {
  CHECK(std::string(sm_version()) == "1.0.0");
  sm_limits l = sm_default_limits();
  CHECK(l.max_exact_n == 22);
  CHECK(l.grid_k == 8);

  sm_instance* p = nullptr;
  CHECK(sm_instance_from_json("{not json", &p) == SM_ERR_PARSE);
  CHECK(p == nullptr);
  CHECK(std::string(sm_last_error()).size() > 0);
  CHECK(sm_instance_from_json(nullptr, &p) == SM_ERR_INVALID_ARGUMENT);
  CHECK(sm_instance_from_json(
            R"({"nodes":2,"edges":[{"u":0,"v":0,"r":"1"}],"sharing":{"rule":"equal"}})", &p) ==
        SM_ERR_INVALID_ARGUMENT);

  InstancePtr inst = load(generate("path3"));
  CHECK(std::string(sm_last_error()).empty());
  char* out = nullptr;
  REQUIRE(sm_instance_to_json(inst.get(), &out) == SM_OK);
  Json doc = Json::parse(take(out));
  CHECK(doc["nodes"] == 4);

  sm_instance* lifted = nullptr;
  REQUIRE(sm_instance_with_alpha(inst.get(), R"(["1/2"])", &lifted) == SM_OK);
  InstancePtr lifted_ptr(lifted);
  REQUIRE(sm_instance_to_json(lifted, &out) == SM_OK);
  CHECK(Json::parse(take(out))["alpha"] == Json::array({"1/2"}));
  CHECK(sm_instance_with_alpha(inst.get(), R"(["1/4","1/2"])", &lifted) ==
        SM_ERR_INVALID_ARGUMENT);

  CHECK(sm_solve(inst.get(), "simplex", nullptr, nullptr, &out) == SM_ERR_INVALID_ARGUMENT);
  CHECK(sm_check(inst.get(), R"({"pairs":[[0,2]]})", &out) == SM_ERR_INVALID_ARGUMENT);
  CHECK(sm_generate("unicorn", nullptr, &out) == SM_ERR_INVALID_ARGUMENT);
  sm_instance_free(nullptr);
  sm_ccg_free(nullptr);
}

TEST_CASE("c api: solve, audit and check") {
  InstancePtr path = load(generate("path3"));
  char* out = nullptr;
  REQUIRE(sm_solve(path.get(), "brbp", nullptr, nullptr, &out) == SM_OK);
  Json r = Json::parse(take(out));
  CHECK(r["outcome"] == "stable");
  CHECK(r["value"] == "2");
  CHECK(r["lemmas"]["ok"] == true);

  REQUIRE(sm_audit(path.get(), nullptr, &out) == SM_OK);
  Json a = Json::parse(take(out));
  CHECK(a["poa"] == "2");
  CHECK(a["pos"] == "1");
  CHECK(a["stable_exists"] == true);

  REQUIRE(sm_check(path.get(), R"({"pairs":[[1,2]]})", &out) == SM_OK);
  Json c = Json::parse(take(out));
  CHECK(c["stable"] == true);
  REQUIRE(sm_check(path.get(), R"({"pairs":[[0,1]]})", &out) == SM_OK);
  CHECK(Json::parse(take(out))["stable"] == false);

  InstancePtr none = load(generate("nonexistence"));
  REQUIRE(sm_audit(none.get(), nullptr, &out) == SM_OK);
  CHECK(Json::parse(take(out))["stable_exists"] == false);
  REQUIRE(sm_solve(none.get(), "srpq", nullptr, nullptr, &out) == SM_OK);
  Json s = Json::parse(take(out));
  CHECK(s["outcome"] == "none");
  CHECK(s["matching"].is_null());

  InstancePtr tri = load(generate("cyclic-triangle"));
  CHECK(sm_solve(tri.get(), "greedy", "raw", nullptr, &out) == SM_ERR_PREFERENCE_CYCLE);

  InstancePtr matthew = load(generate("matthew-tight", R"({"R":"3"})"));
  REQUIRE(sm_solve(matthew.get(), "greedy", "raw", nullptr, &out) == SM_OK);
  Json g = Json::parse(take(out));
  CHECK(g["outcome"] == "stable");
  CHECK(g["greedy"]["edge_visits"] == g["greedy"]["rounds"].get<int>() * 3);

  sm_limits tiny = sm_default_limits();
  tiny.max_enum_n = 3;
  CHECK(sm_audit(path.get(), &tiny, &out) == SM_ERR_LIMIT);
}

TEST_CASE("c api: dynamics") {
  InstancePtr pos = load(generate("pos-tight"));
  char* summary = nullptr;
  char* trace = nullptr;
  REQUIRE(sm_dynamics(pos.get(), "brbp", nullptr, 0, nullptr, &summary, &trace) == SM_OK);
  Json s = Json::parse(take(summary));
  std::string lines = take(trace);
  CHECK(s["value"] == "7/5");
  CHECK(s["summary"]["biswivels"] == 1);
  CHECK(lines.find("\"relaxed-biswivel\"") != std::string::npos);

  std::string first, second;
  for (std::string* dst : {&first, &second}) {
    REQUIRE(sm_dynamics(pos.get(), "arbitrary", nullptr, 42, nullptr, &summary, &trace) == SM_OK);
    *dst = take(summary) + take(trace);
  }
  CHECK(first == second);

  InstancePtr none = load(generate("nonexistence"));
  sm_limits l = sm_default_limits();
  l.cap = 25;
  REQUIRE(sm_dynamics(none.get(), "bbp", nullptr, 0, &l, &summary, nullptr) == SM_OK);
  Json capped = Json::parse(take(summary));
  CHECK(capped["summary"]["termination"] == "cap-hit");
  CHECK(capped["summary"]["steps"] == 25);
  CHECK(sm_dynamics(none.get(), "bbp", R"({"pairs":[[0,3]]})", 0, &l, &summary, nullptr) ==
        SM_ERR_INVALID_ARGUMENT);
}

TEST_CASE("c api: generators") {
  Json m = Json::parse(generate("matthew-tight", R"({"R":"5"})"));
  CHECK(m["sharing"]["rule"] == "matthew");
  Json r1 = Json::parse(generate("random", R"({"seed":"7","n":"6","rule":"trust"})"));
  Json r2 = Json::parse(generate("random", R"({"seed":"7","n":"6","rule":"trust"})"));
  CHECK(r1 == r2);
  Json aug = Json::parse(generate("augment", (R"({"instance":)" + Json(generate("path3")).dump() +
                                              R"(,"eps":"1/10"})").c_str()));
  CHECK(aug["nodes"] == 8);
  char* out = nullptr;
  CHECK(sm_generate("pos-tight", R"({"eps":"0"})", &out) == SM_ERR_INVALID_ARGUMENT);
  CHECK(sm_generate("random", R"({"seed":"x"})", &out) != SM_OK);
}

TEST_CASE("c api: contribution games") {
  CcgPtr game = load_ccg(generate("tight-budget"));
  char* out = nullptr;
  REQUIRE(sm_ccg_report(game.get(), nullptr, &out) == SM_OK);
  Json rep = Json::parse(take(out));
  CHECK(rep["forbidden"] == Json::parse("[[1,2]]"));
  CHECK(rep["tight_budget"]["value"] == "19/10");
  CHECK(rep["tight_budget"]["verdict"]["equilibrium"] == true);

  const char* middle = R"({"allocations":[{"edge":[0,1],"su":"1","sv":"0"},
      {"edge":[1,2],"su":"1","sv":"1"},{"edge":[2,3],"su":"0","sv":"1"}]})";
  REQUIRE(sm_ccg_check(game.get(), middle, nullptr, &out) == SM_OK);
  Json chk = Json::parse(take(out));
  CHECK(chk["equilibrium"] == false);
  CHECK(chk["witness"]["utility_after"] == Json::array({"19/10", "19/10"}));

  CcgPtr atmost = load_ccg(generate("tight-budget", R"({"mode":"atmost"})"));
  const char* idle = R"({"allocations":[{"edge":[1,2],"su":"1","sv":"1"}]})";
  REQUIRE(sm_ccg_check(atmost.get(), idle, nullptr, &out) == SM_OK);
  CHECK(Json::parse(take(out))["equilibrium"] == true);
  REQUIRE(sm_ccg_report(atmost.get(), nullptr, &out) == SM_OK);
  CHECK(Json::parse(take(out))["tight_budget"].is_null());

  sm_ccg* lifted = nullptr;
  REQUIRE(sm_ccg_with_alpha(game.get(), R"(["1/4"])", &lifted) == SM_OK);
  CcgPtr lifted_ptr(lifted);
  REQUIRE(sm_ccg_to_json(lifted, &out) == SM_OK);
  CHECK(Json::parse(take(out))["alpha"] == Json::array({"1/4"}));

  CHECK(sm_ccg_check(game.get(), R"({"allocations":[{"edge":[1,2],"su":"2","sv":"0"}]})",
                     nullptr, &out) == SM_ERR_INVALID_ARGUMENT);
  sm_ccg* bad = nullptr;
  CHECK(sm_ccg_from_json(R"({"nodes":2})", &bad) == SM_ERR_PARSE);
}
