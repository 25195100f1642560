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

#include "harness/runner.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "common/error.h"
#include "common/random.h"

namespace crl::harness {

void RunLog::Validate() const {
  std::uint64_t last = 0;
  for (std::size_t i = 0; i < episodes.size(); ++i) {
    const auto& e = episodes[i];
    if (i > 0 && e.step <= last) {
      ThrowDomain("run log " + env + "/" + agent + "/seed" +
                  std::to_string(seed) + ": steps not strictly increasing at row " +
                  std::to_string(i + 1));
    }
    if (e.step > total_steps) {
      ThrowDomain("run log " + env + "/" + agent + ": step " +
                  std::to_string(e.step) + " exceeds total steps " +
                  std::to_string(total_steps));
    }
    if (!std::isfinite(e.episode_return)) {
      ThrowDomain("run log " + env + "/" + agent + ": non-finite return at row " +
                  std::to_string(i + 1));
    }
    last = e.step;
  }
}

std::vector<EpisodeRecord> Train(envs::Environment& env,
                                 ensemble::EnsembleAgent& agent,
                                 std::uint64_t total_steps, std::uint64_t seed) {
  if (agent.state_count() != env.state_count() ||
      agent.action_count() != env.action_count()) {
    ThrowConfig("agent is " + std::to_string(agent.state_count()) + "x" +
                std::to_string(agent.action_count()) + " but " + env.name() +
                " is " + std::to_string(env.state_count()) + "x" +
                std::to_string(env.action_count()));
  }
  Rng dynamics = MakeStream(seed, StreamRole::kEnvDynamics);
  std::vector<EpisodeRecord> episodes;
  std::size_t state = env.Reset(dynamics);
  double episode_return = 0.0;
  for (std::uint64_t t = 0; t < total_steps; ++t) {
    const std::size_t action = agent.Act(state, t);
    const envs::EnvStep step = env.Step(action);
    agent.Observe({state, action, step.reward, step.observation, step.done});
    episode_return += step.reward;
    state = step.observation;
    if (step.done || step.truncated) {
      episodes.push_back({t + 1, episode_return});
      episode_return = 0.0;
      agent.EndEpisode();
      state = env.Reset(dynamics);
    }
  }
  return episodes;
}

RunLog ExecuteRun(const ExperimentConfig& config, const RunRequest& request,
                  const std::vector<qcore::QTable>* initial_heads,
                  std::vector<qcore::QTable>* final_heads) {
  const EnvSpec& env_spec = config.envs.at(request.env_index);
  const AgentSpec& agent_spec = config.agents.at(request.agent_index);
  auto env = MakeEnvironment(env_spec, request.seed);
  const auto agent_config = config.MakeAgentConfig(agent_spec, request.seed);
  auto agent =
      initial_heads != nullptr
          ? ensemble::EnsembleAgent(agent_config, *initial_heads)
          : ensemble::EnsembleAgent(agent_config, env->state_count(),
                                    env->action_count());
  RunLog log;
  log.env = env_spec.label;
  log.agent = agent_spec.name;
  log.seed = request.seed;
  log.config_hash = ConfigHash(config);
  log.total_steps = config.total_steps;
  log.episodes = Train(*env, agent, config.total_steps, request.seed);
  if (final_heads != nullptr) *final_heads = agent.heads();
  return log;
}

std::size_t ResolveJobs(std::size_t requested, std::size_t tasks) {
  std::size_t jobs = requested;
  if (jobs == 0) jobs = std::max<std::size_t>(1, std::thread::hardware_concurrency());
  return std::max<std::size_t>(1, std::min(jobs, tasks));
}

std::vector<RunLog> RunExperiment(const ExperimentConfig& config,
                                  std::size_t jobs, const ProgressFn& progress) {
  std::vector<RunRequest> requests;
  for (std::size_t e = 0; e < config.envs.size(); ++e) {
    for (std::size_t a = 0; a < config.agents.size(); ++a) {
      for (std::uint64_t seed : config.seeds) requests.push_back({e, a, seed});
    }
  }
  std::vector<RunLog> logs(requests.size());
  const std::size_t workers =
      ResolveJobs(jobs != 0 ? jobs : config.jobs, requests.size());

  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::mutex mutex;
  std::exception_ptr error;
  std::size_t done = 0;
  auto work = [&] {
    while (!failed.load()) {
      const std::size_t i = next.fetch_add(1);
      if (i >= requests.size()) return;
      try {
        logs[i] = ExecuteRun(config, requests[i]);
      } catch (...) {
        std::lock_guard lock(mutex);
        if (!error) error = std::current_exception();
        failed = true;
        return;
      }
      if (progress) {
        std::lock_guard lock(mutex);
        progress(++done, requests.size());
      }
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  if (error) std::rethrow_exception(error);
  return logs;
}

}  // namespace crl::harness
