// Copyright 2026 The Authors.
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

/* C interface to the committee-voting ensemble RL library.
 *
 * Every function returns a crl_status; on failure crl_last_error() holds a
 * thread-local diagnostic until the next failing call on that thread.
 * Objects are opaque handles released with the matching *_destroy function
 * (NULL is accepted). Strings returned through char** are heap-allocated and
 * released with crl_string_free. */
#ifndef COMMITTEE_RL_COMMITTEE_RL_H_
#define COMMITTEE_RL_COMMITTEE_RL_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define CRL_API __declspec(dllexport)
#else
#define CRL_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum crl_status {
  CRL_OK = 0,
  CRL_ERR_DOMAIN = 1,    /* argument outside the operation's domain */
  CRL_ERR_CONFIG = 2,    /* invalid configuration */
  CRL_ERR_CAPACITY = 3,  /* problem too large (brute force) */
  CRL_ERR_USAGE = 4,     /* call out of order (e.g. step before reset) */
  CRL_ERR_IO = 5,
  CRL_ERR_PARSE = 6,
  CRL_ERR_NULL_ARGUMENT = 7,
  CRL_ERR_INTERNAL = 8
} crl_status;

/* Passed as lottery_voter when the rule is not the lottery rule. */
#define CRL_NO_VOTER ((size_t)-1)

CRL_API const char* crl_version(void);
CRL_API const char* crl_status_name(crl_status status);
CRL_API const char* crl_last_error(void);
CRL_API void crl_string_free(char* text);
/* Shortest round-trip decimal form, the one used in every CSV. Writes a
 * NUL-terminated string (truncated to capacity) and returns its full
 * length. 32 bytes always suffice. */
CRL_API size_t crl_format_double(double value, char* buffer, size_t capacity);

/* ---- Profiles and elections ------------------------------------------ */

typedef struct crl_profile crl_profile;
typedef struct crl_committee crl_committee;

/* utilities: voters * candidates values, row-major (row = one voter). */
CRL_API crl_status crl_profile_create(size_t voters, size_t candidates,
                                      const double* utilities,
                                      crl_profile** out);
CRL_API void crl_profile_destroy(crl_profile* profile);
CRL_API size_t crl_profile_voters(const crl_profile* profile);
CRL_API size_t crl_profile_candidates(const crl_profile* profile);

/* Election rule: "plurality" (alias "sntv"), "bloc", "ccr", "borda",
 * "judge", "lottery". lottery_voter is required for "lottery" and must be
 * CRL_NO_VOTER otherwise. */
typedef struct crl_rule_spec {
  const char* rule;
  size_t lottery_voter;
  int seeded_tiebreak; /* 0: lowest index wins ties */
  uint64_t tiebreak_seed;
} crl_rule_spec;

CRL_API crl_status crl_elect_topk(const crl_profile* profile,
                                  const crl_rule_spec* rule, size_t n,
                                  crl_committee** out);
CRL_API crl_status crl_elect_threshold(const crl_profile* profile,
                                       const crl_rule_spec* rule,
                                       double threshold, crl_committee** out);
CRL_API crl_status crl_elect_bruteforce(const crl_profile* profile,
                                        const crl_rule_spec* rule, size_t n,
                                        crl_committee** out);
CRL_API crl_status crl_score_committee(const crl_profile* profile,
                                       const crl_rule_spec* rule,
                                       const size_t* members, size_t count,
                                       double* score);

CRL_API void crl_committee_destroy(crl_committee* committee);
CRL_API size_t crl_committee_size(const crl_committee* committee);
CRL_API double crl_committee_score(const crl_committee* committee);
/* Copies min(size, capacity) members in election order. */
CRL_API size_t crl_committee_members(const crl_committee* committee,
                                     size_t* members, size_t capacity);

/* ---- Ballot files ------------------------------------------------------ */

typedef struct crl_ballot crl_ballot;

CRL_API crl_status crl_ballot_load(const char* path, crl_ballot** out);
CRL_API crl_status crl_ballot_parse(const char* text, crl_ballot** out);
CRL_API void crl_ballot_destroy(crl_ballot* ballot);
/* Borrowed; valid while the ballot lives. */
CRL_API const crl_profile* crl_ballot_profile(const crl_ballot* ballot);
/* Header values. Each returns 1 and writes *out when the key was given. */
CRL_API const char* crl_ballot_rule(const crl_ballot* ballot); /* or NULL */
CRL_API int crl_ballot_size(const crl_ballot* ballot, size_t* out);
CRL_API int crl_ballot_threshold(const crl_ballot* ballot, double* out);
CRL_API int crl_ballot_lottery_voter(const crl_ballot* ballot, size_t* out);
CRL_API int crl_ballot_tiebreak_seed(const crl_ballot* ballot, uint64_t* out);

/* ---- Q-tables ----------------------------------------------------------- */

typedef struct crl_qtable crl_qtable;

CRL_API crl_status crl_qtable_create(size_t states, size_t actions,
                                     double fill, crl_qtable** out);
CRL_API crl_status crl_qtable_load(const char* path, crl_qtable** out);
CRL_API crl_status crl_qtable_save(const crl_qtable* table, const char* path);
CRL_API void crl_qtable_destroy(crl_qtable* table);
CRL_API size_t crl_qtable_states(const crl_qtable* table);
CRL_API size_t crl_qtable_actions(const crl_qtable* table);
CRL_API crl_status crl_qtable_get(const crl_qtable* table, size_t state,
                                  size_t action, double* value);
CRL_API crl_status crl_qtable_set(crl_qtable* table, size_t state,
                                  size_t action, double value);
/* One Q-learning step; writes the updated value to *updated if non-NULL. */
CRL_API crl_status crl_qtable_update(crl_qtable* table, size_t state,
                                     size_t action, double reward,
                                     size_t next_state, int terminal,
                                     double alpha, double gamma,
                                     double* updated);

/* ---- Environments ------------------------------------------------------- */

typedef struct crl_env crl_env;

typedef struct crl_step_result {
  size_t observation;
  double reward;
  int done;
  int truncated;
} crl_step_result;

/* spec_json: one environment object as in the experiment config "envs"
 * list, e.g. {"kind":"corridor","actions":10}. */
CRL_API crl_status crl_env_create(const char* spec_json, uint64_t seed,
                                  crl_env** out);
CRL_API void crl_env_destroy(crl_env* env);
CRL_API size_t crl_env_states(const crl_env* env);
CRL_API size_t crl_env_actions(const crl_env* env);
CRL_API crl_status crl_env_reset(crl_env* env, uint64_t seed,
                                 size_t* observation);
CRL_API crl_status crl_env_step(crl_env* env, size_t action,
                                crl_step_result* out);
CRL_API crl_status crl_env_describe(const crl_env* env, char** text);
CRL_API crl_status crl_env_render(const crl_env* env, char** text);

/* ---- Experiments -------------------------------------------------------- */

typedef struct crl_config crl_config;
typedef struct crl_results crl_results;

CRL_API crl_status crl_config_load(const char* path, crl_config** out);
CRL_API crl_status crl_config_parse(const char* json_text, crl_config** out);
CRL_API void crl_config_destroy(crl_config* config);
/* Replaces the seed list with count consecutive seeds from start. */
CRL_API crl_status crl_config_set_seeds(crl_config* config, uint64_t start,
                                        size_t count);
CRL_API size_t crl_config_seed_count(const crl_config* config);
CRL_API crl_status crl_config_to_json(const crl_config* config, char** text);
CRL_API crl_status crl_config_hash(const crl_config* config, char** text);

typedef void (*crl_progress_fn)(size_t done, size_t total, void* user);

/* Runs every (env, agent, seed) and computes the metric report. jobs = 0
 * uses the config's value. */
CRL_API crl_status crl_experiment_run(const crl_config* config, size_t jobs,
                                      crl_progress_fn progress, void* user,
                                      crl_results** out);

/* Single run (env, agent) at seed. load_dir / save_dir (either may be NULL)
 * hold one checkpoint per head, head_<i>.qtable. The metric settings are
 * shrunk to fit the run length if needed. */
CRL_API crl_status crl_train(const crl_config* config, size_t env_index,
                             size_t agent_index, uint64_t seed,
                             const char* load_dir, const char* save_dir,
                             crl_results** out);

CRL_API void crl_results_destroy(crl_results* results);
CRL_API crl_status crl_results_write(const crl_results* results,
                                     const char* dir, int plots);
CRL_API crl_status crl_results_write_report(const crl_results* results,
                                            const char* dir, int plots);
CRL_API crl_status crl_results_load(const char* dir, crl_results** out);
CRL_API crl_status crl_results_report_text(const crl_results* results,
                                           int color, char** text);
/* metrics.csv content. */
CRL_API crl_status crl_results_metrics_csv(const crl_results* results,
                                           char** text);
CRL_API size_t crl_results_run_count(const crl_results* results);
/* Episodes logged by run i and the mean return of its last `tail` episodes
 * (all when tail is 0 or larger than the count). */
CRL_API crl_status crl_results_run_summary(const crl_results* results,
                                           size_t run, size_t tail,
                                           size_t* episodes,
                                           double* mean_return);

#ifdef __cplusplus
}  /* extern "C" */
#endif

#endif  /* COMMITTEE_RL_COMMITTEE_RL_H_ */
