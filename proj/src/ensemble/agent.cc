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
#include "ensemble/agent.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <utility>

#include "common/error.h"
#include "votecore/election.h"

namespace crl::ensemble {

using votecore::RuleKind;
using votecore::ScoringRule;
using votecore::TieBreaker;
using votecore::TieBreakPolicy;

std::string_view ClassicPolicyName(ClassicPolicy policy) {
  switch (policy) {
    case ClassicPolicy::kMajorityVoting: return "majority";
    case ClassicPolicy::kRankVoting: return "rank";
    case ClassicPolicy::kAverage: return "average";
    case ClassicPolicy::kBootstrapped: return "bootstrapped";
    case ClassicPolicy::kBoltzmannAddition: return "boltzmann";
  }
  return "unknown";
}

std::optional<ClassicPolicy> ParseClassicPolicy(std::string_view name) {
  if (name == "majority" || name == "majority-voting") {
    return ClassicPolicy::kMajorityVoting;
  }
  if (name == "rank" || name == "rank-voting") return ClassicPolicy::kRankVoting;
  if (name == "average") return ClassicPolicy::kAverage;
  if (name == "bootstrapped" || name == "bootstrap") {
    return ClassicPolicy::kBootstrapped;
  }
  if (name == "boltzmann" || name == "boltzmann-addition") {
    return ClassicPolicy::kBoltzmannAddition;
  }
  return std::nullopt;
}

std::string_view UtilityModeName(UtilityMode mode) {
  return mode == UtilityMode::kRaw ? "raw" : "softmax";
}

std::optional<UtilityMode> ParseUtilityMode(std::string_view name) {
  if (name == "raw") return UtilityMode::kRaw;
  if (name == "softmax") return UtilityMode::kSoftmax;
  return std::nullopt;
}

void AgentConfig::Validate() const {
  if (heads == 0) ThrowConfig("ensemble needs at least one head");
  params.Validate();
  tiebreak.Validate();
  if (update_mask_p.has_value() &&
      !(*update_mask_p >= 0.0 && *update_mask_p <= 1.0)) {
    ThrowConfig("update mask probability must be in [0, 1]");
  }
  if (!(init_scale >= 0.0) || !std::isfinite(init_scale)) {
    ThrowConfig("init scale must be finite and >= 0");
  }
  if (const auto* committee = std::get_if<CommitteePolicy>(&policy)) {
    if (!(committee->threshold >= 0.0)) {
      ThrowConfig("satisfaction threshold must be >= 0");
    }
    if (committee->rule == RuleKind::kLottery && committee->threshold != 0.0) {
      ThrowConfig("lottery rule only runs with a zero threshold");
    }
  }
}

namespace {

std::vector<qcore::QTable> RandomHeads(const AgentConfig& config,
                                       std::size_t states,
                                       std::size_t actions) {
  std::vector<qcore::QTable> heads;
  heads.reserve(config.heads);
  for (std::size_t i = 0; i < config.heads; ++i) {
    qcore::QTable table(states, actions);
    if (config.init_scale > 0.0) {
      Rng rng = MakeStream(config.seed, StreamRole::kAgentInit, i);
      std::uniform_real_distribution<double> init(-config.init_scale,
                                                  config.init_scale);
      for (std::size_t s = 0; s < states; ++s) {
        for (double& q : table.mutable_row(s)) q = init(rng);
      }
    }
    heads.push_back(std::move(table));
  }
  return heads;
}

// Highest-utility action of one ballot, lower index first on ties (the same
// convention that defines rank 1).
std::size_t TopChoice(std::span<const double> row) {
  return static_cast<std::size_t>(
      std::max_element(row.begin(), row.end()) - row.begin());
}

}  // namespace

EnsembleAgent::EnsembleAgent(const AgentConfig& config, std::size_t states,
                             std::size_t actions)
    : EnsembleAgent(config, RandomHeads(config, states, actions)) {}

EnsembleAgent::EnsembleAgent(const AgentConfig& config,
                             std::vector<qcore::QTable> heads)
    : config_(config),
      heads_(std::move(heads)),
      action_rng_(MakeStream(config.seed, StreamRole::kActionSampling)),
      mask_rng_(MakeStream(config.seed, StreamRole::kUpdateMask)),
      bootstrap_rng_(MakeStream(config.seed, StreamRole::kBootstrapHead)) {
  config_.Validate();
  if (heads_.empty() || heads_.size() != config_.heads) {
    ThrowConfig("expected " + std::to_string(config_.heads) + " heads, got " +
                std::to_string(heads_.size()));
  }
  for (const auto& head : heads_) {
    if (head.states() != heads_.front().states() ||
        head.actions() != heads_.front().actions()) {
      ThrowConfig("all heads must share the same dimensions");
    }
  }
  bootstrap_head_ = UniformIndex(bootstrap_rng_, heads_.size());
}

void EnsembleAgent::set_bootstrap_head(std::size_t head) {
  if (head >= heads_.size()) {
    ThrowDomain("bootstrap head " + std::to_string(head) + " out of range");
  }
  bootstrap_head_ = head;
}

void EnsembleAgent::CheckState(std::size_t state) const {
  heads_.front().CheckIndices(state, 0);
}

votecore::UtilityProfile EnsembleAgent::Utilities(std::size_t state) const {
  CheckState(state);
  const std::size_t m = action_count();
  std::vector<double> utilities;
  utilities.reserve(heads_.size() * m);
  for (const auto& head : heads_) {
    const auto row = head.row(state);
    if (config_.utility_mode == UtilityMode::kRaw) {
      utilities.insert(utilities.end(), row.begin(), row.end());
    } else {
      const auto soft = Softmax(row);
      utilities.insert(utilities.end(), soft.begin(), soft.end());
    }
  }
  return votecore::UtilityProfile(heads_.size(), m, std::move(utilities));
}

votecore::Committee EnsembleAgent::Elect(std::size_t state) const {
  const auto* committee = std::get_if<CommitteePolicy>(&config_.policy);
  if (committee == nullptr) {
    ThrowConfig("Elect requires a committee policy");
  }
  const ScoringRule rule = committee->rule == RuleKind::kLottery
                               ? ScoringRule::Lottery(bootstrap_head_)
                               : ScoringRule::Of(committee->rule);
  return votecore::ElectThreshold(rule, Utilities(state), committee->threshold,
                                  config_.tiebreak);
}

std::size_t EnsembleAgent::Act(std::size_t state, std::uint64_t step) {
  CheckState(state);
  const double epsilon = qcore::EpsilonAt(config_.params.epsilon, step);
  if (Uniform01(action_rng_) < epsilon) {
    return UniformIndex(action_rng_, action_count());
  }
  return ActGreedy(state);
}

std::size_t EnsembleAgent::ActGreedy(std::size_t state) {
  if (std::holds_alternative<CommitteePolicy>(config_.policy)) {
    const votecore::Committee committee = Elect(state);
    return committee.members[UniformIndex(action_rng_, committee.members.size())];
  }
  const ClassicPolicy policy = std::get<ClassicPolicy>(config_.policy);
  if (policy == ClassicPolicy::kBoltzmannAddition) {
    const auto probabilities = BoltzmannAdditionDistribution(heads_, state);
    std::discrete_distribution<std::size_t> pick(probabilities.begin(),
                                                 probabilities.end());
    return pick(action_rng_);
  }
  return ClassicAction(policy, heads_, state, config_.tiebreak, bootstrap_head_);
}

void EnsembleAgent::Observe(const qcore::Transition& sample) {
  for (auto& head : heads_) {
    if (config_.update_mask_p.has_value() &&
        !(Uniform01(mask_rng_) < *config_.update_mask_p)) {
      continue;
    }
    qcore::QUpdate(head, sample, config_.params);
  }
}

void EnsembleAgent::EndEpisode() {
  bootstrap_head_ = UniformIndex(bootstrap_rng_, heads_.size());
}

std::vector<double> Softmax(std::span<const double> values) {
  const double top = *std::max_element(values.begin(), values.end());
  std::vector<double> out(values.size());
  double total = 0.0;
  for (std::size_t a = 0; a < values.size(); ++a) {
    out[a] = std::exp(values[a] - top);
    total += out[a];
  }
  for (double& p : out) p /= total;
  return out;
}

std::size_t ClassicAction(ClassicPolicy policy,
                          std::span<const qcore::QTable> heads,
                          std::size_t state, const TieBreakPolicy& tiebreak,
                          std::size_t bootstrap_head) {
  if (heads.empty()) ThrowConfig("classic policy needs at least one head");
  heads.front().CheckIndices(state, 0);
  const std::size_t m = heads.front().actions();
  const double k = static_cast<double>(heads.size());
  const TieBreaker ties(tiebreak, m);
  std::vector<double> score(m, 0.0);
  switch (policy) {
    case ClassicPolicy::kMajorityVoting:
      for (const auto& head : heads) score[TopChoice(head.row(state))] += 1.0;
      break;
    case ClassicPolicy::kRankVoting: {
      // pref_i(a) = |A| - pos^i(a), ties ranked by lower index.
      std::vector<std::size_t> order(m);
      for (const auto& head : heads) {
        const auto row = head.row(state);
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return row[a] > row[b]; });
        for (std::size_t r = 0; r < m; ++r) {
          score[order[r]] += static_cast<double>(m - 1 - r);
        }
      }
      break;
    }
    case ClassicPolicy::kAverage:
      for (std::size_t a = 0; a < m; ++a) {
        double sum = 0.0;
        for (const auto& head : heads) sum += head.value(state, a);
        score[a] = sum / k;
      }
      break;
    case ClassicPolicy::kBootstrapped:
      if (bootstrap_head >= heads.size()) {
        ThrowConfig("bootstrap head " + std::to_string(bootstrap_head) +
                    " out of range");
      }
      return votecore::ArgMax(heads[bootstrap_head].row(state), ties);
    case ClassicPolicy::kBoltzmannAddition:
      ThrowConfig(
          "Boltzmann addition is stochastic; use its action distribution");
  }
  return votecore::ArgMax(score, ties);
}

std::size_t ClassicAction(ClassicPolicy policy, const EnsembleAgent& agent,
                          std::size_t state) {
  return ClassicAction(policy, agent.heads(), state, agent.config().tiebreak,
                       agent.bootstrap_head());
}

std::vector<double> BoltzmannAdditionDistribution(
    std::span<const qcore::QTable> heads, std::size_t state) {
  if (heads.empty()) ThrowConfig("Boltzmann addition needs at least one head");
  heads.front().CheckIndices(state, 0);
  std::vector<double> mean(heads.front().actions(), 0.0);
  for (const auto& head : heads) {
    const auto soft = Softmax(head.row(state));
    for (std::size_t a = 0; a < mean.size(); ++a) mean[a] += soft[a];
  }
  for (double& p : mean) p /= static_cast<double>(heads.size());
  return mean;
}

}  // namespace crl::ensemble
