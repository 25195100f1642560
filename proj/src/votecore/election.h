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
#ifndef COMMITTEE_RL_VOTECORE_ELECTION_H_
#define COMMITTEE_RL_VOTECORE_ELECTION_H_

#include <cstddef>
#include <cstdint>

#include "votecore/profile.h"
#include "votecore/scoring.h"
#include "votecore/tiebreak.h"

namespace crl::votecore {

// Largest number of subsets ElectBruteForce will enumerate.
inline constexpr std::uint64_t kMaxBruteForceSubsets = 1'000'000;

// Greedy n-winner election: starting from the empty committee, repeatedly
// add the candidate whose inclusion maximizes the committee score. Exact for
// Plurality, Bloc, Borda and Majority Judgment; a (1 - 1/e) approximation for
// Chamberlin-Courant. Bloc marginals are scored against the target size n
// (Bloc is additive once |W| is fixed). Lottery only supports n = 1.
Committee ElectTopK(const ScoringRule& rule, const UtilityProfile& profile,
                    std::size_t n,
                    const TieBreakPolicy& tiebreak = TieBreakPolicy::LowestIndex());

// Satisfaction-threshold election: grow the committee greedily while the
// score stays <= threshold and candidates remain. Always returns at least one
// member. For Lottery the threshold must be 0 and the result is the masked
// voter's top candidate.
Committee ElectThreshold(
    const ScoringRule& rule, const UtilityProfile& profile, double threshold,
    const TieBreakPolicy& tiebreak = TieBreakPolicy::LowestIndex());

// Exact optimum over all n-subsets. Among equal scores the lexicographically
// smallest sorted member list wins; members are returned sorted. Throws a
// capacity error beyond kMaxBruteForceSubsets subsets.
Committee ElectBruteForce(const ScoringRule& rule,
                          const UtilityProfile& profile, std::size_t n);

// binomial(m, n), saturating at cap + 1.
std::uint64_t BoundedBinomial(std::size_t m, std::size_t n, std::uint64_t cap);

}  // namespace crl::votecore

#endif  // COMMITTEE_RL_VOTECORE_ELECTION_H_
