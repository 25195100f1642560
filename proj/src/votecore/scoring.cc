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
#include "votecore/scoring.h"

#include <algorithm>
#include <string>
#include <vector>

#include "common/error.h"

namespace crl::votecore {

std::string_view RuleName(RuleKind kind) {
  switch (kind) {
    case RuleKind::kPlurality: return "plurality";
    case RuleKind::kBloc: return "bloc";
    case RuleKind::kChamberlinCourant: return "ccr";
    case RuleKind::kBorda: return "borda";
    case RuleKind::kMajorityJudgment: return "judge";
    case RuleKind::kLottery: return "lottery";
  }
  return "unknown";
}

std::optional<RuleKind> ParseRuleName(std::string_view name) {
  if (name == "plurality" || name == "sntv") return RuleKind::kPlurality;
  if (name == "bloc") return RuleKind::kBloc;
  if (name == "ccr" || name == "chamberlin-courant") {
    return RuleKind::kChamberlinCourant;
  }
  if (name == "borda") return RuleKind::kBorda;
  if (name == "judge" || name == "majority-judgment") {
    return RuleKind::kMajorityJudgment;
  }
  if (name == "lottery" || name == "random-ballot") return RuleKind::kLottery;
  return std::nullopt;
}

bool Committee::Contains(std::size_t candidate) const {
  return std::find(members.begin(), members.end(), candidate) != members.end();
}

CommitteeScorer::CommitteeScorer(const ScoringRule& rule,
                                 const UtilityProfile& profile)
    : rule_(rule), profile_(profile) {
  if (rule_.kind == RuleKind::kLottery) {
    if (!rule_.lottery_voter.has_value()) {
      ThrowConfig("lottery rule needs a masked voter");
    }
    if (*rule_.lottery_voter >= profile_.voters()) {
      ThrowDomain("lottery voter " + std::to_string(*rule_.lottery_voter) +
                  " out of range [0, " + std::to_string(profile_.voters()) +
                  ")");
    }
  } else if (rule_.lottery_voter.has_value()) {
    ThrowConfig("only the lottery rule takes a masked voter");
  }
  if (!rule_.is_ordinal()) return;
  const std::size_t m = profile_.candidates();
  positions_.resize(profile_.voters() * m);
  for (std::size_t i = 0; i < profile_.voters(); ++i) {
    const auto ranks = RankPositions(profile_, i);
    for (std::size_t a = 0; a < m; ++a) {
      positions_[i * m + a] = static_cast<std::uint32_t>(ranks[a]);
    }
  }
}

double CommitteeScorer::Score(std::span<const std::size_t> members) const {
  const std::size_t m = profile_.candidates();
  if (members.empty()) ThrowDomain("committee must not be empty");
  if (members.size() > m) ThrowDomain("committee larger than candidate set");
  std::vector<bool> seen(m, false);
  for (std::size_t a : members) {
    if (a >= m) {
      ThrowDomain("candidate " + std::to_string(a) + " out of range [0, " +
                  std::to_string(m) + ")");
    }
    if (seen[a]) ThrowDomain("candidate " + std::to_string(a) + " repeated");
    seen[a] = true;
  }
  return ScoreUnchecked(members);
}

double CommitteeScorer::ScoreUnchecked(
    std::span<const std::size_t> members) const {
  const std::size_t k = profile_.voters();
  const auto size = static_cast<std::uint32_t>(members.size());
  double total = 0.0;
  switch (rule_.kind) {
    case RuleKind::kPlurality:
      for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t a : members) {
          if (position(i, a) == 1) {
            total += 1.0;
            break;
          }
        }
      }
      break;
    case RuleKind::kBloc:
      for (std::size_t i = 0; i < k; ++i) {
        std::uint32_t hits = 0;
        for (std::size_t a : members) hits += position(i, a) <= size ? 1 : 0;
        total += hits;
      }
      break;
    case RuleKind::kChamberlinCourant:
      for (std::size_t i = 0; i < k; ++i) {
        std::uint32_t best = 0;
        for (std::size_t a : members) best = std::max(best, satisfaction(i, a));
        total += best;
      }
      break;
    case RuleKind::kBorda:
      for (std::size_t i = 0; i < k; ++i) {
        std::uint32_t sum = 0;
        for (std::size_t a : members) sum += satisfaction(i, a);
        total += sum;
      }
      break;
    case RuleKind::kMajorityJudgment:
    {
      // Summed in index order so the value depends on the set alone.
      std::vector<std::size_t> ordered(members.begin(), members.end());
      std::sort(ordered.begin(), ordered.end());
      for (std::size_t i = 0; i < k; ++i) {
        double inner = 0.0;
        for (std::size_t a : ordered) inner += profile_.utility(i, a);
        total += inner;
      }
      break;
    }
    case RuleKind::kLottery: {
      // phi(i) = 0 for every voter but the masked one.
      const std::size_t v = *rule_.lottery_voter;
      double best = profile_.utility(v, members.front());
      for (std::size_t a : members) best = std::max(best, profile_.utility(v, a));
      total += best;
      break;
    }
  }
  return total;
}

double ScoreCommittee(const ScoringRule& rule, const UtilityProfile& profile,
                      std::span<const std::size_t> members) {
  return CommitteeScorer(rule, profile).Score(members);
}

}  // namespace crl::votecore
