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
#ifndef COMMITTEE_RL_ENVS_ENVIRONMENT_H_
#define COMMITTEE_RL_ENVS_ENVIRONMENT_H_

#include <cstddef>
#include <string>

#include "common/random.h"

namespace crl::envs {

struct EnvStep {
  std::size_t observation = 0;
  double reward = 0.0;
  bool done = false;       // reached a terminal state
  bool truncated = false;  // hit the step cap without terminating
};

// Episodic environment over a dense, tabular state index.
class Environment {
 public:
  virtual ~Environment() = default;

  virtual std::string name() const = 0;
  virtual std::size_t state_count() const = 0;
  virtual std::size_t action_count() const = 0;

  // Starts a new episode and returns the start observation.
  virtual std::size_t Reset(Rng& rng) = 0;
  // Throws a usage error when no episode is running.
  virtual EnvStep Step(std::size_t action) = 0;

  virtual std::size_t steps_taken() const = 0;
  virtual bool episode_running() const = 0;

  // Multi-line summary: dimensions, state-space size, layout details.
  virtual std::string Describe() const = 0;
  // Text art of the layout and the current agent position.
  virtual std::string Render() const = 0;
};

}  // namespace crl::envs

#endif  // COMMITTEE_RL_ENVS_ENVIRONMENT_H_
