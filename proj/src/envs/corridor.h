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
#ifndef COMMITTEE_RL_ENVS_CORRIDOR_H_
#define COMMITTEE_RL_ENVS_CORRIDOR_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "envs/environment.h"

namespace crl::envs {

// Linear chain s_1..s_N (indices 0..N-1). Each state has one action moving
// left and one moving right; the other m - 2 actions are self-loops. Which
// action indices are operational is drawn per state from the layout seed and
// fixed for the environment's lifetime. Entering s_1 or s_N ends the episode
// with reward_low / reward_high.
struct CorridorConfig {
  std::size_t states = 50;
  std::size_t actions = 10;
  std::size_t episode_cap = 100;
  double start_p = 0.2;  // start index ~ Binomial(states - 1, start_p)
  double reward_low = 0.1;
  double reward_high = 1.0;
  std::uint64_t seed = 0;

  void Validate() const;
};

class CorridorEnv : public Environment {
 public:
  explicit CorridorEnv(const CorridorConfig& config);

  std::string name() const override;
  std::size_t state_count() const override { return config_.states; }
  std::size_t action_count() const override { return config_.actions; }
  std::size_t Reset(Rng& rng) override;
  EnvStep Step(std::size_t action) override;
  std::size_t steps_taken() const override { return steps_; }
  bool episode_running() const override { return running_; }
  std::string Describe() const override;
  std::string Render() const override;

  const CorridorConfig& config() const { return config_; }
  std::size_t left_action(std::size_t state) const { return left_[state]; }
  std::size_t right_action(std::size_t state) const { return right_[state]; }
  bool is_terminal(std::size_t state) const {
    return state == 0 || state + 1 == config_.states;
  }

  // Layout-only successor of (state, action), clamped to the chain.
  std::size_t Move(std::size_t state, std::size_t action) const;

  // The observation is the chain index itself.
  std::size_t EncodeState(std::size_t state) const { return state; }
  std::size_t DecodeState(std::size_t index) const { return index; }

  // Places the agent directly; used by tests and the renderer.
  void SetState(std::size_t state);
  std::size_t state() const { return state_; }

 private:
  double TerminalReward(std::size_t state) const {
    return state == 0 ? config_.reward_low : config_.reward_high;
  }

  CorridorConfig config_;
  std::vector<std::size_t> left_;
  std::vector<std::size_t> right_;
  std::size_t state_ = 0;
  std::size_t steps_ = 0;
  bool running_ = false;
};

}  // namespace crl::envs

#endif  // COMMITTEE_RL_ENVS_CORRIDOR_H_
