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

#include <string>

#include "json.hpp"
#include "socialmatch/ccg.hpp"
#include "socialmatch/dynamics.hpp"
#include "socialmatch/instance.hpp"
#include "socialmatch/matching.hpp"
#include "socialmatch/oracle.hpp"
#include "socialmatch/roommates.hpp"

namespace socialmatch {

using Json = nlohmann::ordered_json;

// Rationals are written as "p" or "p/q" strings. Reading accepts those,
// decimals, and JSON numbers. Malformed documents throw Error(kParse).
Rational rational_from_json(const Json& j);
Json rational_to_json(const Rational& r);

Json parse_json(const std::string& text);

FriendshipVector friendship_from_json(const Json& j);
Json friendship_to_json(const FriendshipVector& alpha);

GameInstance instance_from_json(const Json& j);
Json instance_to_json(const GameInstance& inst);

Matching matching_from_json(const Graph& graph, const Json& j);
Json matching_to_json(const Matching& m);

Json verdict_to_json(const PairVerdict& v);
Json stability_to_json(const GameInstance& inst, const Matching& m);

AuditReport audit_from_json(const Json& j);
Json audit_to_json(const AuditReport& report);

Json lemma_report_to_json(const LemmaReport& report);
// One JSON object per line: phase markers and deviations, then an "end" record.
std::string trace_to_jsonl(const DynamicsTrace& trace);
Json trace_summary_to_json(const DynamicsTrace& trace);

ContributionGame ccg_from_json(const Json& j);
Json ccg_to_json(const ContributionGame& game);

StrategyProfile profile_from_json(const ContributionGame& game, const Json& j);
Json profile_to_json(const ContributionGame& game, const StrategyProfile& profile);

Json equilibrium_to_json(const ContributionGame& game, const EquilibriumVerdict& verdict);
Json ccg_audit_to_json(const ContributionGame& game, const CcgAuditReport& report);

}  // namespace socialmatch
