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
#include "votecore/profile.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <utility>

#include "common/error.h"

namespace crl::votecore {

UtilityProfile::UtilityProfile(std::size_t voters, std::size_t candidates,
                               std::vector<double> utilities)
    : voters_(voters), candidates_(candidates), utilities_(std::move(utilities)) {
  if (voters_ == 0) ThrowDomain("profile needs at least one voter");
  if (candidates_ == 0) ThrowDomain("profile needs at least one candidate");
  if (utilities_.size() != voters_ * candidates_) {
    ThrowDomain("profile expects " + std::to_string(voters_ * candidates_) +
                " utilities, got " + std::to_string(utilities_.size()));
  }
  for (std::size_t i = 0; i < utilities_.size(); ++i) {
    if (!std::isfinite(utilities_[i])) {
      ThrowDomain("utility of voter " + std::to_string(i / candidates_) +
                  ", candidate " + std::to_string(i % candidates_) +
                  " is not finite");
    }
  }
}

UtilityProfile UtilityProfile::FromRows(
    const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) ThrowDomain("profile needs at least one voter");
  const std::size_t m = rows.front().size();
  std::vector<double> flat;
  flat.reserve(rows.size() * m);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != m) {
      ThrowDomain("voter " + std::to_string(i) + " lists " +
                  std::to_string(rows[i].size()) + " utilities, expected " +
                  std::to_string(m));
    }
    flat.insert(flat.end(), rows[i].begin(), rows[i].end());
  }
  return UtilityProfile(rows.size(), m, std::move(flat));
}

std::vector<std::size_t> RankPositions(const UtilityProfile& profile,
                                       std::size_t voter) {
  if (voter >= profile.voters()) {
    ThrowDomain("voter index " + std::to_string(voter) + " out of range [0, " +
                std::to_string(profile.voters()) + ")");
  }
  const auto ballot = profile.ballot(voter);
  std::vector<std::size_t> order(ballot.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return ballot[a] > ballot[b];
  });
  std::vector<std::size_t> ranks(ballot.size());
  for (std::size_t r = 0; r < order.size(); ++r) ranks[order[r]] = r + 1;
  return ranks;
}

}  // namespace crl::votecore
