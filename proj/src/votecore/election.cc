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
#include "votecore/election.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "common/error.h"

namespace crl::votecore {
namespace {

// Incremental greedy state. Candidate totals reproduce
// CommitteeScorer::ScoreUnchecked(W + {a}) bit for bit: ordinal totals are
// small integers, and the judge fold walks members in index order like the
// scorer does.
class GreedyElection {
 public:
  GreedyElection(const CommitteeScorer& scorer, const TieBreaker& ties)
      : scorer_(scorer),
        ties_(ties),
        k_(scorer.profile().voters()),
        m_(scorer.profile().candidates()),
        in_committee_(m_, false) {
    switch (scorer_.rule().kind) {
      case RuleKind::kPlurality:
        top_count_.assign(m_, 0);
        for (std::size_t i = 0; i < k_; ++i) {
          for (std::size_t a = 0; a < m_; ++a) {
            if (scorer_.position(i, a) == 1) ++top_count_[a];
          }
        }
        break;
      case RuleKind::kChamberlinCourant: best_.assign(k_, 0); break;
      case RuleKind::kBorda:
        borda_column_.assign(m_, 0);
        for (std::size_t i = 0; i < k_; ++i) {
          for (std::size_t a = 0; a < m_; ++a) {
            borda_column_[a] += scorer_.satisfaction(i, a);
          }
        }
        break;
      default: break;
    }
  }

  const std::vector<std::size_t>& members() const { return members_; }
  bool full() const { return members_.size() == m_; }

  // Adds argmax over a not in W of score(W + {a}); Bloc uses alpha_{bloc_size}.
  // Returns that winning total.
  double AddBest(std::size_t bloc_size) {
    PrepareRound(bloc_size);
    std::size_t best = m_;
    double best_total = 0.0;
    for (std::size_t a = 0; a < m_; ++a) {
      if (in_committee_[a]) continue;
      const double total = CandidateTotal(a, bloc_size);
      if (best == m_ || total > best_total ||
          (total == best_total && ties_.Prefers(a, best))) {
        best = a;
        best_total = total;
      }
    }
    Absorb(best);
    return best_total;
  }

 private:
  void PrepareRound(std::size_t bloc_size) {
    if (scorer_.rule().kind != RuleKind::kBloc) return;
    bloc_base_ = 0;
    for (std::size_t i = 0; i < k_; ++i) {
      for (std::size_t b : members_) {
        bloc_base_ += scorer_.position(i, b) <= bloc_size ? 1 : 0;
      }
    }
  }

  double CandidateTotal(std::size_t a, std::size_t bloc_size) const {
    const UtilityProfile& profile = scorer_.profile();
    switch (scorer_.rule().kind) {
      case RuleKind::kPlurality:
        return static_cast<double>(covered_ + top_count_[a]);
      case RuleKind::kBloc: {
        std::uint64_t hits = bloc_base_;
        for (std::size_t i = 0; i < k_; ++i) {
          hits += scorer_.position(i, a) <= bloc_size ? 1 : 0;
        }
        return static_cast<double>(hits);
      }
      case RuleKind::kChamberlinCourant: {
        std::uint64_t total = 0;
        for (std::size_t i = 0; i < k_; ++i) {
          total += std::max(best_[i], scorer_.satisfaction(i, a));
        }
        return static_cast<double>(total);
      }
      case RuleKind::kBorda:
        return static_cast<double>(borda_base_ + borda_column_[a]);
      case RuleKind::kMajorityJudgment: {
        double total = 0.0;
        for (std::size_t i = 0; i < k_; ++i) {
          double inner = 0.0;
          bool placed = false;
          for (std::size_t b : ordered_) {
            if (!placed && a < b) {
              inner += profile.utility(i, a);
              placed = true;
            }
            inner += profile.utility(i, b);
          }
          if (!placed) inner += profile.utility(i, a);
          total += inner;
        }
        return total;
      }
      case RuleKind::kLottery: {
        const double u = profile.utility(*scorer_.rule().lottery_voter, a);
        return 0.0 + (members_.empty() ? u : std::max(lottery_best_, u));
      }
    }
    return 0.0;
  }

  void Absorb(std::size_t a) {
    const UtilityProfile& profile = scorer_.profile();
    switch (scorer_.rule().kind) {
      case RuleKind::kPlurality:
        // Each ballot has one top choice, so only a's count changes.
        covered_ += top_count_[a];
        top_count_[a] = 0;
        break;
      case RuleKind::kChamberlinCourant:
        for (std::size_t i = 0; i < k_; ++i) {
          best_[i] = std::max(best_[i], scorer_.satisfaction(i, a));
        }
        break;
      case RuleKind::kBorda: borda_base_ += borda_column_[a]; break;
      case RuleKind::kMajorityJudgment:
        ordered_.insert(std::upper_bound(ordered_.begin(), ordered_.end(), a), a);
        break;
      case RuleKind::kLottery: {
        const double u = profile.utility(*scorer_.rule().lottery_voter, a);
        lottery_best_ = members_.empty() ? u : std::max(lottery_best_, u);
        break;
      }
      case RuleKind::kBloc: break;
    }
    in_committee_[a] = true;
    members_.push_back(a);
  }

  const CommitteeScorer& scorer_;
  const TieBreaker& ties_;
  std::size_t k_;
  std::size_t m_;
  std::vector<bool> in_committee_;
  std::vector<std::size_t> members_;

  std::uint64_t covered_ = 0;
  std::vector<std::uint64_t> top_count_;  // uncovered voters ranking a first
  std::vector<std::uint32_t> best_;
  std::vector<std::size_t> ordered_;  // judge members by index
  std::vector<std::uint64_t> borda_column_;
  std::uint64_t borda_base_ = 0;
  std::uint64_t bloc_base_ = 0;
  double lottery_best_ = 0.0;
};

void CheckSize(const UtilityProfile& profile, std::size_t n) {
  if (n < 1 || n > profile.candidates()) {
    ThrowDomain("committee size " + std::to_string(n) + " out of range [1, " +
                std::to_string(profile.candidates()) + "]");
  }
}

void CheckLotterySize(const ScoringRule& rule, std::size_t n) {
  if (rule.kind == RuleKind::kLottery && n != 1) {
    ThrowConfig("lottery rule only elects single-member committees");
  }
}

}  // namespace

std::uint64_t BoundedBinomial(std::size_t m, std::size_t n, std::uint64_t cap) {
  if (n > m) return 0;
  n = std::min(n, m - n);
  std::uint64_t c = 1;
  for (std::size_t i = 0; i < n; ++i) {
    // c * (m - i) == binomial(m, i + 1) * (i + 1), so the division is exact.
    c = c * (m - i) / (i + 1);
    if (c > cap) return cap + 1;
  }
  return c;
}

Committee ElectTopK(const ScoringRule& rule, const UtilityProfile& profile,
                    std::size_t n, const TieBreakPolicy& tiebreak) {
  CheckSize(profile, n);
  CheckLotterySize(rule, n);
  const CommitteeScorer scorer(rule, profile);
  const TieBreaker ties(tiebreak, profile.candidates());
  GreedyElection greedy(scorer, ties);
  for (std::size_t l = 0; l < n; ++l) greedy.AddBest(n);
  Committee result{greedy.members(), 0.0};
  result.score = scorer.ScoreUnchecked(result.members);
  return result;
}

Committee ElectThreshold(const ScoringRule& rule, const UtilityProfile& profile,
                         double threshold, const TieBreakPolicy& tiebreak) {
  if (!(threshold >= 0.0)) {
    ThrowDomain("satisfaction threshold must be >= 0");
  }
  if (rule.kind == RuleKind::kLottery) {
    if (threshold != 0.0) {
      ThrowConfig("lottery rule only runs with a zero threshold");
    }
    return ElectTopK(rule, profile, 1, tiebreak);
  }
  const CommitteeScorer scorer(rule, profile);
  const TieBreaker ties(tiebreak, profile.candidates());
  GreedyElection greedy(scorer, ties);
  double score = 0.0;
  do {
    score = greedy.AddBest(greedy.members().size() + 1);
  } while (!greedy.full() && score <= threshold);
  return Committee{greedy.members(), score};
}

Committee ElectBruteForce(const ScoringRule& rule,
                          const UtilityProfile& profile, std::size_t n) {
  CheckSize(profile, n);
  CheckLotterySize(rule, n);
  const std::size_t m = profile.candidates();
  if (BoundedBinomial(m, n, kMaxBruteForceSubsets) > kMaxBruteForceSubsets) {
    throw Error(ErrorCode::kCapacity,
                "brute-force election over binomial(" + std::to_string(m) +
                    ", " + std::to_string(n) + ") subsets exceeds the limit of " +
                    std::to_string(kMaxBruteForceSubsets));
  }
  const CommitteeScorer scorer(rule, profile);
  std::vector<std::size_t> subset(n);
  std::iota(subset.begin(), subset.end(), std::size_t{0});
  Committee best{subset, scorer.ScoreUnchecked(subset)};
  // Lexicographic enumeration; a later subset must be strictly better.
  while (true) {
    std::size_t i = n;
    while (i > 0 && subset[i - 1] == m - n + (i - 1)) --i;
    if (i == 0) break;
    ++subset[i - 1];
    for (std::size_t j = i; j < n; ++j) subset[j] = subset[j - 1] + 1;
    const double score = scorer.ScoreUnchecked(subset);
    if (score > best.score) best = Committee{subset, score};
  }
  return best;
}

}  // namespace crl::votecore
