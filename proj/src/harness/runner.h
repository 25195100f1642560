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

#ifndef COMMITTEE_RL_HARNESS_RUNNER_H_
#define COMMITTEE_RL_HARNESS_RUNNER_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ensemble/agent.h"
#include "envs/environment.h"
#include "harness/config.h"
#include "qcore/qtable.h"

namespace crl::harness {

struct EpisodeRecord {
  std::uint64_t step = 0;  // global step at which the episode ended
  double episode_return = 0.0;

  friend bool operator==(const EpisodeRecord&, const EpisodeRecord&) = default;
};

// Episode returns of one (env, agent, seed) run.
struct RunLog {
  std::string env;
  std::string agent;
  std::uint64_t seed = 0;
  std::string config_hash;
  std::uint64_t total_steps = 0;
  std::vector<EpisodeRecord> episodes;

  // Steps strictly increasing and within total_steps, returns finite.
  void Validate() const;

  friend bool operator==(const RunLog&, const RunLog&) = default;
};

// Runs total_steps environment steps. Episodes that end (terminal or step
// cap) are logged with their undiscounted return; a trailing unfinished
// episode is not. Environment dynamics draw from the seed's dynamics stream.
std::vector<EpisodeRecord> Train(envs::Environment& env,
                                 ensemble::EnsembleAgent& agent,
                                 std::uint64_t total_steps, std::uint64_t seed);

struct RunRequest {
  std::size_t env_index = 0;
  std::size_t agent_index = 0;
  std::uint64_t seed = 0;
};

// One run of the experiment. Optional initial heads resume training;
// final_heads receives the trained tables.
RunLog ExecuteRun(const ExperimentConfig& config, const RunRequest& request,
                  const std::vector<qcore::QTable>* initial_heads = nullptr,
                  std::vector<qcore::QTable>* final_heads = nullptr);

// Every (env, agent, seed) run in config order: env-major, then agent, then
// seed. jobs = 0 uses config.jobs, and 0 there means hardware concurrency.
// Results never depend on the number of workers.
using ProgressFn = std::function<void(std::size_t done, std::size_t total)>;
std::vector<RunLog> RunExperiment(const ExperimentConfig& config,
                                  std::size_t jobs = 0,
                                  const ProgressFn& progress = nullptr);

std::size_t ResolveJobs(std::size_t requested, std::size_t tasks);

}  // namespace crl::harness

#endif  // COMMITTEE_RL_HARNESS_RUNNER_H_
