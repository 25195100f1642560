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

#include "committee_rl/committee_rl.h"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <memory>
#include <new>
#include <string>
#include <utility>

#include "common/error.h"
#include "common/format.h"
#include "common/random.h"
#include "envs/environment.h"
#include "harness/config.h"
#include "harness/metric.h"
#include "harness/report.h"
#include "harness/results.h"
#include "harness/runner.h"
#include "qcore/learning.h"
#include "qcore/qtable.h"
#include "votecore/ballot_file.h"
#include "votecore/election.h"
#include "votecore/profile.h"
#include "votecore/scoring.h"

struct crl_profile {
  crl::votecore::UtilityProfile profile;
};

struct crl_committee {
  crl::votecore::Committee committee;
};

struct crl_ballot {
  crl::votecore::BallotFile file;
  crl_profile profile;
};

struct crl_qtable {
  crl::qcore::QTable table;
};

struct crl_env {
  std::unique_ptr<crl::envs::Environment> env;
  crl::Rng rng;
};

struct crl_config {
  crl::harness::ExperimentConfig config;
};

struct crl_results {
  crl::harness::ExperimentResults results;
};

namespace {

thread_local std::string last_error;

crl_status Fail(crl_status status, std::string message) {
  last_error = std::move(message);
  return status;
}

// Runs body, translating exceptions into status codes.
template <typename Body>
crl_status Guard(Body&& body) {
  try {
    body();
    return CRL_OK;
  } catch (const crl::Error& e) {
    return Fail(static_cast<crl_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return Fail(CRL_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return Fail(CRL_ERR_INTERNAL, e.what());
  } catch (...) {
    return Fail(CRL_ERR_INTERNAL, "unknown error");
  }
}

#define CRL_REQUIRE(arg)                                                  \
  do {                                                                    \
    if ((arg) == nullptr) {                                               \
      return Fail(CRL_ERR_NULL_ARGUMENT, "argument '" #arg "' is NULL"); \
    }                                                                     \
  } while (0)

char* CopyString(const std::string& text) {
  char* out = static_cast<char*>(std::malloc(text.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, text.data(), text.size() + 1);
  return out;
}

struct ResolvedRule {
  crl::votecore::ScoringRule rule;
  crl::votecore::TieBreakPolicy tiebreak;
};

ResolvedRule Resolve(const crl_rule_spec& spec) {
  if (spec.rule == nullptr) crl::ThrowConfig("rule name is NULL");
  const auto kind = crl::votecore::ParseRuleName(spec.rule);
  if (!kind) {
    crl::ThrowConfig(std::string("unknown rule '") + spec.rule +
                     "' (plurality, bloc, ccr, borda, judge, lottery)");
  }
  ResolvedRule resolved;
  resolved.rule.kind = *kind;
  if (spec.lottery_voter != CRL_NO_VOTER) {
    resolved.rule.lottery_voter = spec.lottery_voter;
  }
  resolved.tiebreak = spec.seeded_tiebreak != 0
                          ? crl::votecore::TieBreakPolicy::SeededRandom(spec.tiebreak_seed)
                          : crl::votecore::TieBreakPolicy::LowestIndex();
  return resolved;
}

void ShrinkMetricToFit(crl::harness::MetricSettings& metric,
                       std::uint64_t total_steps) {
  if (metric.horizon() <= total_steps) return;
  metric.sample_count = static_cast<std::size_t>(total_steps / metric.sample_interval);
  if (metric.sample_count == 0) {
    metric.sample_interval = total_steps;
    metric.sample_count = 1;
  }
}

std::string HeadPath(const char* dir, std::size_t head) {
  return (std::filesystem::path(dir) / ("head_" + std::to_string(head) + ".qtable"))
      .string();
}

}  // namespace

extern "C" {

const char* crl_version(void) { return "0.1.0"; }

const char* crl_status_name(crl_status status) {
  switch (status) {
    case CRL_OK: return "ok";
    case CRL_ERR_DOMAIN: return "domain error";
    case CRL_ERR_CONFIG: return "configuration error";
    case CRL_ERR_CAPACITY: return "capacity error";
    case CRL_ERR_USAGE: return "usage error";
    case CRL_ERR_IO: return "i/o error";
    case CRL_ERR_PARSE: return "parse error";
    case CRL_ERR_NULL_ARGUMENT: return "null argument";
    case CRL_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* crl_last_error(void) { return last_error.c_str(); }

void crl_string_free(char* text) { std::free(text); }

size_t crl_format_double(double value, char* buffer, size_t capacity) {
  const std::string text = crl::FormatDouble(value);
  if (buffer != nullptr && capacity > 0) {
    const std::size_t n = std::min(capacity - 1, text.size());
    std::memcpy(buffer, text.data(), n);
    buffer[n] = '\0';
  }
  return text.size();
}

// Profiles and elections.

crl_status crl_profile_create(size_t voters, size_t candidates,
                              const double* utilities, crl_profile** out) {
  CRL_REQUIRE(utilities);
  CRL_REQUIRE(out);
  *out = nullptr;
  return Guard([&] {
    if (voters != 0 && candidates > SIZE_MAX / voters) {
      crl::ThrowDomain("profile dimensions overflow");
    }
    std::vector<double> values(utilities, utilities + voters * candidates);
    *out = new crl_profile{
        crl::votecore::UtilityProfile(voters, candidates, std::move(values))};
  });
}

void crl_profile_destroy(crl_profile* profile) { delete profile; }

size_t crl_profile_voters(const crl_profile* profile) {
  return profile == nullptr ? 0 : profile->profile.voters();
}

size_t crl_profile_candidates(const crl_profile* profile) {
  return profile == nullptr ? 0 : profile->profile.candidates();
}

crl_status crl_elect_topk(const crl_profile* profile, const crl_rule_spec* rule,
                          size_t n, crl_committee** out) {
  CRL_REQUIRE(profile);
  CRL_REQUIRE(rule);
  CRL_REQUIRE(out);
  *out = nullptr;
  return Guard([&] {
    const ResolvedRule r = Resolve(*rule);
    *out = new crl_committee{
        crl::votecore::ElectTopK(r.rule, profile->profile, n, r.tiebreak)};
  });
}

crl_status crl_elect_threshold(const crl_profile* profile,
                               const crl_rule_spec* rule, double threshold,
                               crl_committee** out) {
  CRL_REQUIRE(profile);
  CRL_REQUIRE(rule);
  CRL_REQUIRE(out);
  *out = nullptr;
  return Guard([&] {
    const ResolvedRule r = Resolve(*rule);
    *out = new crl_committee{crl::votecore::ElectThreshold(
        r.rule, profile->profile, threshold, r.tiebreak)};
  });
}

crl_status crl_elect_bruteforce(const crl_profile* profile,
                                const crl_rule_spec* rule, size_t n,
                                crl_committee** out) {
  CRL_REQUIRE(profile);
  CRL_REQUIRE(rule);
  CRL_REQUIRE(out);
  *out = nullptr;
  return Guard([&] {
    const ResolvedRule r = Resolve(*rule);
    *out = new crl_committee{
        crl::votecore::ElectBruteForce(r.rule, profile->profile, n)};
  });
}

crl_status crl_score_committee(const crl_profile* profile,
                               const crl_rule_spec* rule, const size_t* members,
                               size_t count, double* score) {
  CRL_REQUIRE(profile);
  CRL_REQUIRE(rule);
  CRL_REQUIRE(score);
  if (count > 0) CRL_REQUIRE(members);
  return Guard([&] {
    const ResolvedRule r = Resolve(*rule);
    std::vector<std::size_t> list(members, members + count);
    *score = crl::votecore::ScoreCommittee(r.rule, profile->profile, list);
  });
}

void crl_committee_destroy(crl_committee* committee) { delete committee; }

size_t crl_committee_size(const crl_committee* committee) {
  return committee == nullptr ? 0 : committee->committee.members.size();
}

double crl_committee_score(const crl_committee* committee) {
  return committee == nullptr ? 0.0 : committee->committee.score;
}

size_t crl_committee_members(const crl_committee* committee, size_t* members,
                             size_t capacity) {
  if (committee == nullptr || members == nullptr) return 0;
  const auto& list = committee->committee.members;
  const std::size_t n = std::min(capacity, list.size());
  for (std::size_t i = 0; i < n; ++i) members[i] = list[i];
  return n;
}

// Ballot files.

crl_status crl_ballot_load(const char* path, crl_ballot** out) {
  CRL_REQUIRE(path);
  CRL_REQUIRE(out);
  *out = nullptr;
  return Guard([&] {
    auto file = crl::votecore::LoadBallotFile(path);
    auto profile = file.profile;
    *out = new crl_ballot{std::move(file), crl_profile{std::move(profile)}};
  });
}

crl_status crl_ballot_parse(const char* text, crl_ballot** out) {
  CRL_REQUIRE(text);
  CRL_REQUIRE(out);
  *out = nullptr;
  return Guard([&] {
    auto file = crl::votecore::ParseBallotFile(text);
    auto profile = file.profile;
    *out = new crl_ballot{std::move(file), crl_profile{std::move(profile)}};
  });
}

void crl_ballot_destroy(crl_ballot* ballot) { delete ballot; }

const crl_profile* crl_ballot_profile(const crl_ballot* ballot) {
  return ballot == nullptr ? nullptr : &ballot->profile;
}

const char* crl_ballot_rule(const crl_ballot* ballot) {
  if (ballot == nullptr || !ballot->file.rule) return nullptr;
  return ballot->file.rule->c_str();
}

int crl_ballot_size(const crl_ballot* ballot, size_t* out) {
  if (ballot == nullptr || !ballot->file.n) return 0;
  if (out != nullptr) *out = *ballot->file.n;
  return 1;
}

int crl_ballot_threshold(const crl_ballot* ballot, double* out) {
  if (ballot == nullptr || !ballot->file.threshold) return 0;
  if (out != nullptr) *out = *ballot->file.threshold;
  return 1;
}

int crl_ballot_lottery_voter(const crl_ballot* ballot, size_t* out) {
  if (ballot == nullptr || !ballot->file.lottery_voter) return 0;
  if (out != nullptr) *out = *ballot->file.lottery_voter;
  return 1;
}

int crl_ballot_tiebreak_seed(const crl_ballot* ballot, uint64_t* out) {
  if (ballot == nullptr || !ballot->file.tiebreak_seed) return 0;
  if (out != nullptr) *out = *ballot->file.tiebreak_seed;
  return 1;
}

// Q-tables.

crl_status crl_qtable_create(size_t states, size_t actions, double fill,
                             crl_qtable** out) {
  CRL_REQUIRE(out);
  *out = nullptr;
  return Guard([&] {
    *out = new crl_qtable{crl::qcore::QTable(states, actions, fill)};
  });
}

crl_status crl_qtable_load(const char* path, crl_qtable** out) {
  CRL_REQUIRE(path);
  CRL_REQUIRE(out);
  *out = nullptr;
  return Guard([&] { *out = new crl_qtable{crl::qcore::LoadQTableFile(path)}; });
}

crl_status crl_qtable_save(const crl_qtable* table, const char* path) {
  CRL_REQUIRE(table);
  CRL_REQUIRE(path);
  return Guard([&] { crl::qcore::SaveQTableFile(table->table, path); });
}

void crl_qtable_destroy(crl_qtable* table) { delete table; }

size_t crl_qtable_states(const crl_qtable* table) {
  return table == nullptr ? 0 : table->table.states();
}

size_t crl_qtable_actions(const crl_qtable* table) {
  return table == nullptr ? 0 : table->table.actions();
}

crl_status crl_qtable_get(const crl_qtable* table, size_t state, size_t action,
                          double* value) {
  CRL_REQUIRE(table);
  CRL_REQUIRE(value);
  return Guard([&] {
    table->table.CheckIndices(state, action);
    *value = table->table.value(state, action);
  });
}

crl_status crl_qtable_set(crl_qtable* table, size_t state, size_t action,
                          double value) {
  CRL_REQUIRE(table);
  return Guard([&] { table->table.set(state, action, value); });
}

crl_status crl_qtable_update(crl_qtable* table, size_t state, size_t action,
                             double reward, size_t next_state, int terminal,
                             double alpha, double gamma, double* updated) {
  CRL_REQUIRE(table);
  return Guard([&] {
    const double v = crl::qcore::QUpdate(
        table->table, {state, action, reward, next_state, terminal != 0}, alpha,
        gamma);
    if (updated != nullptr) *updated = v;
  });
}

// Environments.

crl_status crl_env_create(const char* spec_json, uint64_t seed, crl_env** out) {
  CRL_REQUIRE(spec_json);
  CRL_REQUIRE(out);
  *out = nullptr;
  return Guard([&] {
    const auto spec = crl::harness::ParseEnvSpec(spec_json);
    *out = new crl_env{crl::harness::MakeEnvironment(spec, seed),
                       crl::MakeStream(seed, crl::StreamRole::kEnvDynamics)};
  });
}

void crl_env_destroy(crl_env* env) { delete env; }

size_t crl_env_states(const crl_env* env) {
  return env == nullptr ? 0 : env->env->state_count();
}

size_t crl_env_actions(const crl_env* env) {
  return env == nullptr ? 0 : env->env->action_count();
}

crl_status crl_env_reset(crl_env* env, uint64_t seed, size_t* observation) {
  CRL_REQUIRE(env);
  return Guard([&] {
    env->rng = crl::MakeStream(seed, crl::StreamRole::kEnvDynamics);
    const std::size_t obs = env->env->Reset(env->rng);
    if (observation != nullptr) *observation = obs;
  });
}

crl_status crl_env_step(crl_env* env, size_t action, crl_step_result* out) {
  CRL_REQUIRE(env);
  CRL_REQUIRE(out);
  return Guard([&] {
    const auto step = env->env->Step(action);
    *out = {step.observation, step.reward, step.done ? 1 : 0,
            step.truncated ? 1 : 0};
  });
}

crl_status crl_env_describe(const crl_env* env, char** text) {
  CRL_REQUIRE(env);
  CRL_REQUIRE(text);
  return Guard([&] { *text = CopyString(env->env->Describe()); });
}

crl_status crl_env_render(const crl_env* env, char** text) {
  CRL_REQUIRE(env);
  CRL_REQUIRE(text);
  return Guard([&] { *text = CopyString(env->env->Render()); });
}

// Experiments.

crl_status crl_config_load(const char* path, crl_config** out) {
  CRL_REQUIRE(path);
  CRL_REQUIRE(out);
  *out = nullptr;
  return Guard([&] {
    *out = new crl_config{crl::harness::LoadExperimentConfig(path)};
  });
}

crl_status crl_config_parse(const char* json_text, crl_config** out) {
  CRL_REQUIRE(json_text);
  CRL_REQUIRE(out);
  *out = nullptr;
  return Guard([&] {
    *out = new crl_config{crl::harness::ParseExperimentConfig(json_text)};
  });
}

void crl_config_destroy(crl_config* config) { delete config; }

crl_status crl_config_set_seeds(crl_config* config, uint64_t start,
                                size_t count) {
  CRL_REQUIRE(config);
  return Guard([&] {
    if (count == 0) crl::ThrowConfig("seed list must not be empty");
    config->config.seeds.clear();
    for (std::size_t i = 0; i < count; ++i) config->config.seeds.push_back(start + i);
  });
}

size_t crl_config_seed_count(const crl_config* config) {
  return config == nullptr ? 0 : config->config.seeds.size();
}

crl_status crl_config_to_json(const crl_config* config, char** text) {
  CRL_REQUIRE(config);
  CRL_REQUIRE(text);
  return Guard([&] {
    *text = CopyString(crl::harness::ExperimentConfigToJson(config->config));
  });
}

crl_status crl_config_hash(const crl_config* config, char** text) {
  CRL_REQUIRE(config);
  CRL_REQUIRE(text);
  return Guard([&] { *text = CopyString(crl::harness::ConfigHash(config->config)); });
}

crl_status crl_experiment_run(const crl_config* config, size_t jobs,
                              crl_progress_fn progress, void* user,
                              crl_results** out) {
  CRL_REQUIRE(config);
  CRL_REQUIRE(out);
  *out = nullptr;
  return Guard([&] {
    crl::harness::ProgressFn fn;
    if (progress != nullptr) {
      fn = [progress, user](std::size_t done, std::size_t total) {
        progress(done, total, user);
      };
    }
    *out = new crl_results{crl::harness::RunAndReport(config->config, jobs, fn)};
  });
}

crl_status crl_train(const crl_config* config, size_t env_index,
                     size_t agent_index, uint64_t seed, const char* load_dir,
                     const char* save_dir, crl_results** out) {
  CRL_REQUIRE(config);
  CRL_REQUIRE(out);
  *out = nullptr;
  return Guard([&] {
    const auto& full = config->config;
    if (env_index >= full.envs.size() || agent_index >= full.agents.size()) {
      crl::ThrowDomain("env or agent index out of range");
    }
    crl::harness::ExperimentConfig single = full;
    single.envs = {full.envs[env_index]};
    single.agents = {full.agents[agent_index]};
    single.seeds = {seed};
    ShrinkMetricToFit(single.metric, single.total_steps);

    std::vector<crl::qcore::QTable> initial;
    if (load_dir != nullptr) {
      for (std::size_t i = 0; i < single.ensemble.heads; ++i) {
        initial.push_back(crl::qcore::LoadQTableFile(HeadPath(load_dir, i)));
      }
    }
    std::vector<crl::qcore::QTable> final_heads;
    crl::harness::ExperimentResults results;
    results.config = single;
    results.logs.push_back(crl::harness::ExecuteRun(
        single, {0, 0, seed}, load_dir != nullptr ? &initial : nullptr,
        &final_heads));
    results.report = crl::harness::BuildMetricReport(single, results.logs);
    if (save_dir != nullptr) {
      std::filesystem::create_directories(save_dir);
      for (std::size_t i = 0; i < final_heads.size(); ++i) {
        crl::qcore::SaveQTableFile(final_heads[i], HeadPath(save_dir, i));
      }
    }
    *out = new crl_results{std::move(results)};
  });
}

void crl_results_destroy(crl_results* results) { delete results; }

crl_status crl_results_write(const crl_results* results, const char* dir,
                             int plots) {
  CRL_REQUIRE(results);
  CRL_REQUIRE(dir);
  return Guard([&] { crl::harness::WriteResults(dir, results->results, plots != 0); });
}

crl_status crl_results_write_report(const crl_results* results, const char* dir,
                                    int plots) {
  CRL_REQUIRE(results);
  CRL_REQUIRE(dir);
  return Guard([&] {
    crl::harness::WriteReportFiles(dir, results->results, plots != 0);
  });
}

crl_status crl_results_load(const char* dir, crl_results** out) {
  CRL_REQUIRE(dir);
  CRL_REQUIRE(out);
  *out = nullptr;
  return Guard([&] { *out = new crl_results{crl::harness::LoadResults(dir)}; });
}

crl_status crl_results_report_text(const crl_results* results, int color,
                                   char** text) {
  CRL_REQUIRE(results);
  CRL_REQUIRE(text);
  return Guard([&] {
    *text = CopyString(
        crl::harness::RenderReportText(results->results.report, color != 0));
  });
}

crl_status crl_results_metrics_csv(const crl_results* results, char** text) {
  CRL_REQUIRE(results);
  CRL_REQUIRE(text);
  return Guard([&] {
    *text = CopyString(crl::harness::MetricsCsv(results->results.report));
  });
}

size_t crl_results_run_count(const crl_results* results) {
  return results == nullptr ? 0 : results->results.logs.size();
}

crl_status crl_results_run_summary(const crl_results* results, size_t run,
                                   size_t tail, size_t* episodes,
                                   double* mean_return) {
  CRL_REQUIRE(results);
  return Guard([&] {
    if (run >= results->results.logs.size()) crl::ThrowDomain("run index out of range");
    const auto& list = results->results.logs[run].episodes;
    const std::size_t n = (tail == 0 || tail > list.size()) ? list.size() : tail;
    double sum = 0.0;
    for (std::size_t i = list.size() - n; i < list.size(); ++i) {
      sum += list[i].episode_return;
    }
    if (episodes != nullptr) *episodes = list.size();
    if (mean_return != nullptr) *mean_return = n == 0 ? 0.0 : sum / static_cast<double>(n);
  });
}

}  // extern "C"
