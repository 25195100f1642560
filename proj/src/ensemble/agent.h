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
#ifndef COMMITTEE_RL_ENSEMBLE_AGENT_H_
#define COMMITTEE_RL_ENSEMBLE_AGENT_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "common/random.h"
#include "qcore/learning.h"
#include "qcore/qtable.h"
#include "votecore/profile.h"
#include "votecore/scoring.h"
#include "votecore/tiebreak.h"

namespace crl::ensemble {

enum class UtilityMode {
  kRaw,      // mu^i(a) = Q^i(s, a)
  kSoftmax,  // mu^i(a) = softmax over actions of Q^i(s, .)
};

// The classic single-winner aggregation schemes.
enum class ClassicPolicy {
  kMajorityVoting,
  kRankVoting,
  kAverage,
  kBootstrapped,
  kBoltzmannAddition,
};

// Committee election with a satisfaction threshold; the action is drawn
// uniformly from the elected committee. A Lottery rule's masked voter is
// supplied by the agent (the episode's bootstrap head).
struct CommitteePolicy {
  votecore::RuleKind rule = votecore::RuleKind::kPlurality;
  double threshold = 0.0;

  friend bool operator==(const CommitteePolicy&, const CommitteePolicy&) = default;
};

using PolicyKind = std::variant<ClassicPolicy, CommitteePolicy>;

std::string_view ClassicPolicyName(ClassicPolicy policy);
std::optional<ClassicPolicy> ParseClassicPolicy(std::string_view name);
std::string_view UtilityModeName(UtilityMode mode);
std::optional<UtilityMode> ParseUtilityMode(std::string_view name);

struct AgentConfig {
  std::size_t heads = 10;
  PolicyKind policy = ClassicPolicy::kMajorityVoting;
  qcore::LearningParams params;
  votecore::TieBreakPolicy tiebreak;
  UtilityMode utility_mode = UtilityMode::kRaw;
  // Per-head Bernoulli(p) update mask; absent means every head learns from
  // every transition.
  std::optional<double> update_mask_p;
  // Heads start i.i.d. Uniform(-init_scale, init_scale).
  double init_scale = 0.01;
  std::uint64_t seed = 0;

  void Validate() const;
};

// Ensemble of k tabular Q-heads acting through a voting rule.
class EnsembleAgent {
 public:
  EnsembleAgent(const AgentConfig& config, std::size_t states,
                std::size_t actions);
  // Resumes from existing heads (e.g. loaded checkpoints).
  EnsembleAgent(const AgentConfig& config, std::vector<qcore::QTable> heads);

  const AgentConfig& config() const { return config_; }
  std::size_t head_count() const { return heads_.size(); }
  std::size_t state_count() const { return heads_.front().states(); }
  std::size_t action_count() const { return heads_.front().actions(); }
  const std::vector<qcore::QTable>& heads() const { return heads_; }
  qcore::QTable& mutable_head(std::size_t i) { return heads_.at(i); }

  std::size_t bootstrap_head() const { return bootstrap_head_; }
  void set_bootstrap_head(std::size_t head);

  // Ballots of every head at a state (k x |A|).
  votecore::UtilityProfile Utilities(std::size_t state) const;

  // Winning committee at a state; requires a CommitteePolicy.
  votecore::Committee Elect(std::size_t state) const;

  // Epsilon-greedy action at global step t. Exploration steps skip the
  // election entirely.
  std::size_t Act(std::size_t state, std::uint64_t step);

  // Greedy (epsilon = 0) action under the configured policy.
  std::size_t ActGreedy(std::size_t state);

  // Q-learning update of every (unmasked) head on one transition.
  void Observe(const qcore::Transition& sample);

  // Resamples the bootstrap head uniformly.
  void EndEpisode();

 private:
  void CheckState(std::size_t state) const;

  AgentConfig config_;
  std::vector<qcore::QTable> heads_;
  std::size_t bootstrap_head_ = 0;
  Rng action_rng_;
  Rng mask_rng_;
  Rng bootstrap_rng_;
};

// Row-wise softmax (temperature 1) with max subtraction.
std::vector<double> Softmax(std::span<const double> values);

// Direct implementations of the classic policies, independent of the
// election code. Throws a configuration error for kBoltzmannAddition, which
// is stochastic; use BoltzmannAdditionDistribution.
std::size_t ClassicAction(ClassicPolicy policy,
                          std::span<const qcore::QTable> heads,
                          std::size_t state,
                          const votecore::TieBreakPolicy& tiebreak,
                          std::size_t bootstrap_head);
std::size_t ClassicAction(ClassicPolicy policy, const EnsembleAgent& agent,
                          std::size_t state);

// pi_BA(a|s) = mean over heads of softmax(Q^i(s, .))(a).
std::vector<double> BoltzmannAdditionDistribution(
    std::span<const qcore::QTable> heads, std::size_t state);

}  // namespace crl::ensemble

#endif  // COMMITTEE_RL_ENSEMBLE_AGENT_H_
