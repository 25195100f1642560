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
#ifndef COMMITTEE_RL_VOTECORE_PROFILE_H_
#define COMMITTEE_RL_VOTECORE_PROFILE_H_

#include <cstddef>
#include <span>
#include <vector>

namespace crl::votecore {

// Voter x candidate utility matrix. Row i is voter i's ballot; ranks are
// always derived from it on demand.
class UtilityProfile {
 public:
  // Row-major utilities, voters * candidates entries, all finite.
  UtilityProfile(std::size_t voters, std::size_t candidates,
                 std::vector<double> utilities);

  static UtilityProfile FromRows(const std::vector<std::vector<double>>& rows);

  std::size_t voters() const { return voters_; }
  std::size_t candidates() const { return candidates_; }

  double utility(std::size_t voter, std::size_t candidate) const {
    return utilities_[voter * candidates_ + candidate];
  }
  std::span<const double> ballot(std::size_t voter) const {
    return {utilities_.data() + voter * candidates_, candidates_};
  }
  std::span<const double> values() const { return utilities_; }

  friend bool operator==(const UtilityProfile&, const UtilityProfile&) = default;

 private:
  std::size_t voters_;
  std::size_t candidates_;
  std::vector<double> utilities_;
};

// 1-based ranks of every candidate for one voter: higher utility gets the
// smaller rank, equal utilities rank the lower candidate index first.
std::vector<std::size_t> RankPositions(const UtilityProfile& profile,
                                       std::size_t voter);

}  // namespace crl::votecore

#endif  // COMMITTEE_RL_VOTECORE_PROFILE_H_
