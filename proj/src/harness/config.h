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
#ifndef COMMITTEE_RL_HARNESS_CONFIG_H_
#define COMMITTEE_RL_HARNESS_CONFIG_H_

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ensemble/agent.h"
#include "envs/corridor.h"
#include "envs/environment.h"
#include "envs/grid.h"
#include "qcore/learning.h"
#include "votecore/tiebreak.h"

namespace crl::harness {

inline constexpr int kConfigVersion = 1;

struct EnvSpec {
  enum class Kind { kCorridor, kGrid };
  std::string label;
  Kind kind = Kind::kCorridor;
  envs::CorridorConfig corridor;
  envs::GridConfig grid;
};

// Builds the environment for one run; the layout seed is the run seed.
std::unique_ptr<envs::Environment> MakeEnvironment(const EnvSpec& spec,
                                                   std::uint64_t seed);

struct AgentSpec {
  std::string name;
  ensemble::PolicyKind policy;
  std::optional<ensemble::UtilityMode> utility_mode;  // overrides ensemble
};

struct EnsembleSettings {
  std::size_t heads = 10;
  ensemble::UtilityMode utility_mode = ensemble::UtilityMode::kRaw;
  std::optional<double> update_mask_p;
  votecore::TieBreakPolicy tiebreak;
  double init_scale = 0.01;
};

struct MetricSettings {
  double ema_coeff = 0.999;  // per episode
  std::uint64_t sample_interval = 2000;
  std::size_t sample_count = 100;

  void Validate() const;
  std::uint64_t horizon() const { return sample_interval * sample_count; }

  friend bool operator==(const MetricSettings&, const MetricSettings&) = default;
};

struct ExperimentConfig {
  int version = kConfigVersion;
  std::vector<EnvSpec> envs;
  std::vector<AgentSpec> agents;
  EnsembleSettings ensemble;
  qcore::LearningParams learning;
  std::uint64_t total_steps = 200'000;
  std::vector<std::uint64_t> seeds;
  MetricSettings metric;
  std::size_t jobs = 0;  // 0 = hardware concurrency

  // Agent configuration for one (agent, seed) run.
  ensemble::AgentConfig MakeAgentConfig(const AgentSpec& agent,
                                        std::uint64_t seed) const;
};

// Parses and validates a JSON config. Every problem found is reported in one
// configuration error, one line per problem, anchored by field path
// (e.g. "agents[2].threshold: must be >= 0"). Syntax errors carry
// "<source>:<line>:<column>".
ExperimentConfig ParseExperimentConfig(std::string_view text,
                                       std::string_view source = "config");
ExperimentConfig LoadExperimentConfig(const std::string& path);

// Canonical JSON form (round-trips through ParseExperimentConfig).
std::string ExperimentConfigToJson(const ExperimentConfig& config);
// Stable 64-bit FNV-1a of the canonical form, as 16 hex digits.
std::string ConfigHash(const ExperimentConfig& config);

// Parses one environment object (same schema as an "envs" entry).
EnvSpec ParseEnvSpec(std::string_view json_text);

std::string PolicyLabel(const ensemble::PolicyKind& policy);

}  // namespace crl::harness

#endif  // COMMITTEE_RL_HARNESS_CONFIG_H_
