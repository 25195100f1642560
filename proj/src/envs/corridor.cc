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
#include "envs/corridor.h"

#include <cmath>
#include <random>
#include <sstream>
#include <string>

#include "common/error.h"
#include "common/format.h"

namespace crl::envs {

void CorridorConfig::Validate() const {
  if (states < 3) ThrowConfig("corridor needs at least 3 states");
  if (actions < 2) ThrowConfig("corridor needs at least 2 actions");
  if (episode_cap == 0) ThrowConfig("corridor episode cap must be positive");
  if (!(start_p >= 0.0 && start_p <= 1.0)) {
    ThrowConfig("corridor start_p must be in [0, 1]");
  }
  if (!std::isfinite(reward_low) || !std::isfinite(reward_high)) {
    ThrowConfig("corridor rewards must be finite");
  }
}

CorridorEnv::CorridorEnv(const CorridorConfig& config) : config_(config) {
  config_.Validate();
  Rng layout = MakeStream(config_.seed, StreamRole::kEnvLayout);
  left_.resize(config_.states);
  right_.resize(config_.states);
  for (std::size_t s = 0; s < config_.states; ++s) {
    left_[s] = UniformIndex(layout, config_.actions);
    std::size_t right = UniformIndex(layout, config_.actions - 1);
    if (right >= left_[s]) ++right;
    right_[s] = right;
  }
}

std::string CorridorEnv::name() const {
  return "corridor-m" + std::to_string(config_.actions);
}

std::size_t CorridorEnv::Move(std::size_t state, std::size_t action) const {
  if (state >= config_.states) ThrowDomain("corridor state out of range");
  if (action >= config_.actions) ThrowDomain("corridor action out of range");
  if (action == left_[state]) return state == 0 ? state : state - 1;
  if (action == right_[state]) {
    return state + 1 == config_.states ? state : state + 1;
  }
  return state;
}

std::size_t CorridorEnv::Reset(Rng& rng) {
  std::binomial_distribution<std::size_t> start(config_.states - 1,
                                                config_.start_p);
  state_ = start(rng);
  steps_ = 0;
  running_ = true;
  return state_;
}

void CorridorEnv::SetState(std::size_t state) {
  if (state >= config_.states) ThrowDomain("corridor state out of range");
  state_ = state;
  steps_ = 0;
  running_ = true;
}

EnvStep CorridorEnv::Step(std::size_t action) {
  if (!running_) {
    throw Error(ErrorCode::kUsage, "corridor episode is over; call Reset");
  }
  EnvStep result;
  ++steps_;
  if (is_terminal(state_)) {
    // Only reachable when the episode starts in a reward state: any action
    // collects that state's reward.
    if (action >= config_.actions) ThrowDomain("corridor action out of range");
    result.reward = TerminalReward(state_);
    result.done = true;
  } else {
    state_ = Move(state_, action);
    if (is_terminal(state_)) {
      result.reward = TerminalReward(state_);
      result.done = true;
    }
  }
  result.observation = state_;
  if (!result.done && steps_ >= config_.episode_cap) result.truncated = true;
  running_ = !(result.done || result.truncated);
  return result;
}

std::string CorridorEnv::Describe() const {
  std::ostringstream out;
  out << "corridor MDP\n"
      << "  states: " << config_.states << " (s_1..s_" << config_.states
      << " -> index 0.." << config_.states - 1 << ")\n"
      << "  actions: " << config_.actions << " (2 operational per state)\n"
      << "  episode cap: " << config_.episode_cap << " steps\n"
      << "  start: s_(i+1), i ~ Binomial(" << config_.states - 1 << ", "
      << FormatDouble(config_.start_p) << ")\n"
      << "  rewards: s_1 -> " << FormatDouble(config_.reward_low) << ", s_"
      << config_.states << " -> " << FormatDouble(config_.reward_high)
      << " (both terminal)\n"
      << "  layout seed: " << config_.seed << "\n"
      << "  state-space size: " << config_.states << "\n"
      << "  operational actions (state: left right):\n";
  for (std::size_t s = 0; s < config_.states; ++s) {
    out << "    s_" << s + 1 << ": " << left_[s] << ' ' << right_[s] << '\n';
  }
  return out.str();
}

std::string CorridorEnv::Render() const {
  std::string line;
  for (std::size_t s = 0; s < config_.states; ++s) {
    char c = '.';
    if (s == 0) c = 'L';
    if (s + 1 == config_.states) c = 'H';
    if (running_ && s == state_) c = '@';
    line.push_back(c);
  }
  return line + "\n";
}

}  // namespace crl::envs
