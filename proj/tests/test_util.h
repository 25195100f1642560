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

#ifndef COMMITTEE_RL_TESTS_TEST_UTIL_H_
#define COMMITTEE_RL_TESTS_TEST_UTIL_H_

// Generators and reference implementations shared by the unit and
// acceptance tests. The references are deliberately naive (counting,
// exhaustive enumeration) and share no code with the library.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "votecore/profile.h"
#include "votecore/scoring.h"

namespace crl::testing {

using votecore::RuleKind;
using votecore::UtilityProfile;

// Seeded source of random test inputs.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  std::size_t Int(std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng_);
  }
  double Real(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng_);
  }
  bool Coin(double p = 0.5) { return Real(0.0, 1.0) < p; }
  std::mt19937_64& rng() { return rng_; }

  // Mixes three shapes so exact ties get exercised: continuous utilities,
  // small-integer utilities, and rows copied from another voter.
  UtilityProfile Profile(std::size_t voters, std::size_t candidates) {
    std::vector<double> values(voters * candidates);
    const std::size_t shape = Int(0, 2);
    for (std::size_t i = 0; i < voters; ++i) {
      if (shape == 2 && i > 0 && Coin(0.3)) {
        const std::size_t src = Int(0, i - 1);
        std::copy_n(values.begin() + src * candidates, candidates,
                    values.begin() + i * candidates);
        continue;
      }
      for (std::size_t a = 0; a < candidates; ++a) {
        values[i * candidates + a] =
            shape == 1 ? static_cast<double>(Int(0, 3)) : Real(-1.0, 1.0);
      }
    }
    return UtilityProfile(voters, candidates, std::move(values));
  }

 private:
  std::mt19937_64 rng_;
};

// 1-based rank: one plus the number of candidates strictly ahead.
inline std::size_t OraclePosition(const UtilityProfile& p, std::size_t voter,
                                  std::size_t a) {
  std::size_t ahead = 0;
  for (std::size_t b = 0; b < p.candidates(); ++b) {
    const double ub = p.utility(voter, b);
    const double ua = p.utility(voter, a);
    if (ub > ua || (ub == ua && b < a)) ++ahead;
  }
  return ahead + 1;
}

// Direct per-rule definition of sum_i f(mu^i, W).
inline double OracleScore(RuleKind rule, const UtilityProfile& p,
                          const std::vector<std::size_t>& w,
                          std::optional<std::size_t> lottery_voter = {}) {
  const double m = static_cast<double>(p.candidates());
  double total = 0.0;
  for (std::size_t i = 0; i < p.voters(); ++i) {
    double f = 0.0;
    switch (rule) {
      case RuleKind::kPlurality:
        for (std::size_t a : w) f += OraclePosition(p, i, a) == 1 ? 1.0 : 0.0;
        break;
      case RuleKind::kBloc:
        for (std::size_t a : w) f += OraclePosition(p, i, a) <= w.size() ? 1.0 : 0.0;
        break;
      case RuleKind::kChamberlinCourant:
        for (std::size_t a : w) {
          f = std::max(f, m - static_cast<double>(OraclePosition(p, i, a)));
        }
        break;
      case RuleKind::kBorda:
        for (std::size_t a : w) f += m - static_cast<double>(OraclePosition(p, i, a));
        break;
      case RuleKind::kMajorityJudgment:
        for (std::size_t a : w) f += p.utility(i, a);
        break;
      case RuleKind::kLottery:
        if (i == *lottery_voter) {
          f = -INFINITY;
          for (std::size_t a : w) f = std::max(f, p.utility(i, a));
        }
        break;
    }
    total += f;
  }
  return total;
}

// Best score over all n-subsets, by bitmask enumeration.
inline double OracleBestScore(RuleKind rule, const UtilityProfile& p,
                              std::size_t n) {
  const std::size_t m = p.candidates();
  double best = -INFINITY;
  for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcount(mask)) != n) continue;
    std::vector<std::size_t> w;
    for (std::size_t a = 0; a < m; ++a) {
      if (mask & (1u << a)) w.push_back(a);
    }
    best = std::max(best, OracleScore(rule, p, w));
  }
  return best;
}

inline std::vector<std::size_t> Sorted(std::vector<std::size_t> v) {
  std::sort(v.begin(), v.end());
  return v;
}

inline UtilityProfile ThreeVoterProfile() {
  return UtilityProfile::FromRows({{3, 2, 1}, {3, 2, 1}, {1, 2, 3}});
}

}  // namespace crl::testing

#endif  // COMMITTEE_RL_TESTS_TEST_UTIL_H_
