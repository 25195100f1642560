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
#ifndef COMMITTEE_RL_VOTECORE_SCORING_H_
#define COMMITTEE_RL_VOTECORE_SCORING_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "votecore/profile.h"

namespace crl::votecore {

enum class RuleKind {
  kPlurality,          // a.k.a. SNTV
  kBloc,
  kChamberlinCourant,
  kBorda,
  kMajorityJudgment,
  kLottery,            // random ballot with an explicit masked voter
};

struct ScoringRule {
  RuleKind kind = RuleKind::kPlurality;
  // The masked voter; present iff kind == kLottery.
  std::optional<std::size_t> lottery_voter;

  static ScoringRule Of(RuleKind kind) { return {kind, std::nullopt}; }
  static ScoringRule Lottery(std::size_t voter) {
    return {RuleKind::kLottery, voter};
  }

  // Plurality, Bloc, CCR and Borda only look at ranks.
  bool is_ordinal() const {
    return kind != RuleKind::kMajorityJudgment && kind != RuleKind::kLottery;
  }

  friend bool operator==(const ScoringRule&, const ScoringRule&) = default;
};

// Canonical short name ("plurality", "bloc", "ccr", "borda", "judge",
// "lottery").
std::string_view RuleName(RuleKind kind);
// Accepts the canonical names plus a few aliases ("sntv",
// "chamberlin-courant", "majority-judgment", "random-ballot").
std::optional<RuleKind> ParseRuleName(std::string_view name);

struct Committee {
  std::vector<std::size_t> members;  // greedy insertion order
  double score = 0.0;

  bool Contains(std::size_t candidate) const;
  friend bool operator==(const Committee&, const Committee&) = default;
};

// Evaluates sum_i f(mu^i, W) for one rule and profile. Rank tables are built
// once at construction, so repeated evaluations are cheap. Holds a reference
// to the profile, which must outlive the scorer.
class CommitteeScorer {
 public:
  CommitteeScorer(const ScoringRule& rule, const UtilityProfile& profile);

  // Validates members (non-empty, in range, distinct).
  double Score(std::span<const std::size_t> members) const;
  // Same arithmetic without validation.
  double ScoreUnchecked(std::span<const std::size_t> members) const;

  const ScoringRule& rule() const { return rule_; }
  const UtilityProfile& profile() const { return profile_; }

  // 1-based rank of a candidate on a voter's ballot.
  std::uint32_t position(std::size_t voter, std::size_t candidate) const {
    return positions_[voter * profile_.candidates() + candidate];
  }
  // beta^i(a) = m - pos^i(a), in [0, m-1].
  std::uint32_t satisfaction(std::size_t voter, std::size_t candidate) const {
    return static_cast<std::uint32_t>(profile_.candidates()) -
           position(voter, candidate);
  }

 private:
  ScoringRule rule_;
  const UtilityProfile& profile_;
  std::vector<std::uint32_t> positions_;  // empty for cardinal rules
};

double ScoreCommittee(const ScoringRule& rule, const UtilityProfile& profile,
                      std::span<const std::size_t> members);
inline double ScoreCommittee(const ScoringRule& rule,
                             const UtilityProfile& profile,
                             const Committee& committee) {
  return ScoreCommittee(rule, profile, committee.members);
}

}  // namespace crl::votecore

#endif  // COMMITTEE_RL_VOTECORE_SCORING_H_
