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

#ifndef SOCIALMATCH_C_API_H_
#define SOCIALMATCH_C_API_H_

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define SM_API __declspec(dllexport)
#else
#define SM_API __attribute__((visibility("default")))
#endif

typedef struct sm_instance sm_instance;
typedef struct sm_ccg sm_ccg;

typedef enum sm_status {
  SM_OK = 0,
  SM_ERR_INVALID_ARGUMENT = 1,
  SM_ERR_PARSE = 2,
  SM_ERR_LIMIT = 3,
  SM_ERR_NOT_INCIDENT = 4,
  SM_ERR_UNDEFINED_RATIO = 5,
  SM_ERR_STALE_DEVIATION = 6,
  SM_ERR_PREFERENCE_CYCLE = 7,
  SM_ERR_NOT_STABLE = 8,
  SM_ERR_INTERNAL = 9
} sm_status;

typedef struct sm_limits {
  int max_exact_n;     /* optimum by subset DP, default 22 */
  int max_enum_n;      /* matching enumeration, default 12 */
  uint64_t cap;        /* dynamics step cap, 0 = method default */
  int grid_k;          /* equilibrium grid resolution, default 8 */
  uint64_t local_search_cap; /* ccg audit local search, default 200 */
} sm_limits;

SM_API sm_limits sm_default_limits(void);

/* Message of the last failed call on this thread; "" if none. */
SM_API const char* sm_last_error(void);
SM_API const char* sm_version(void);

/* Every char* handed out by the library is released with this. */
SM_API void sm_string_free(char* s);

SM_API sm_status sm_instance_from_json(const char* json, sm_instance** out);
SM_API void sm_instance_free(sm_instance* inst);
SM_API sm_status sm_instance_to_json(const sm_instance* inst, char** out);
/* alpha_json is a JSON array such as ["1/2","1/4"]. */
SM_API sm_status sm_instance_with_alpha(const sm_instance* inst, const char* alpha_json,
                                        sm_instance** out);

/* method: "brbp" | "bbp" | "greedy" | "srpq"; prefs: "raw" | "q" (greedy only).
   The report's "outcome" is "stable", "none" (certified by enumeration) or
   "cap-hit". */
SM_API sm_status sm_solve(const sm_instance* inst, const char* method, const char* prefs,
                          const sm_limits* limits, char** report);

/* Report has "stable_exists" false when enumeration found no stable matching. */
SM_API sm_status sm_audit(const sm_instance* inst, const sm_limits* limits, char** report);

/* method: "brbp" | "bbp" | "arbitrary". start_json is a matching document
   or NULL for the empty matching; brbp ignores it. trace_jsonl may be NULL. */
SM_API sm_status sm_dynamics(const sm_instance* inst, const char* method,
                             const char* start_json, uint64_t seed, const sm_limits* limits,
                             char** summary, char** trace_jsonl);

/* Stability certificate of a matching document {"pairs": [[u,v], ...]}. */
SM_API sm_status sm_check(const sm_instance* inst, const char* matching_json, char** report);

/* gadget: path3 | pos-tight | matthew-tight | friendship-tight | nonexistence |
   cyclic-triangle | augment | random | tight-budget | random-ccg.
   params_json is an object of string values; "augment" reads "instance". */
SM_API sm_status sm_generate(const char* gadget, const char* params_json, char** out);

SM_API sm_status sm_ccg_from_json(const char* json, sm_ccg** out);
SM_API void sm_ccg_free(sm_ccg* game);
SM_API sm_status sm_ccg_to_json(const sm_ccg* game, char** out);
SM_API sm_status sm_ccg_with_alpha(const sm_ccg* game, const char* alpha_json, sm_ccg** out);

/* Audit, forbidden edges and, in exact mode, the tight-budget equilibrium. */
SM_API sm_status sm_ccg_report(const sm_ccg* game, const sm_limits* limits, char** report);

/* Pairwise-equilibrium verdict for a profile document. */
SM_API sm_status sm_ccg_check(const sm_ccg* game, const char* profile_json,
                              const sm_limits* limits, char** report);

#ifdef __cplusplus
}
#endif

#endif  // SOCIALMATCH_C_API_H_
