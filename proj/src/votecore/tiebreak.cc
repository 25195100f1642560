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
#include "votecore/tiebreak.h"

#include <algorithm>
#include <numeric>

#include "common/error.h"
#include "common/random.h"

namespace crl::votecore {

void TieBreakPolicy::Validate() const {
  if (kind == Kind::kSeededRandom && !seed.has_value()) {
    ThrowConfig("seeded tie-break policy requires a seed");
  }
  if (kind == Kind::kLowestIndex && seed.has_value()) {
    ThrowConfig("lowest-index tie-break policy takes no seed");
  }
}

TieBreaker::TieBreaker(const TieBreakPolicy& policy, std::size_t n) {
  policy.Validate();
  if (policy.kind == TieBreakPolicy::Kind::kLowestIndex) return;
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng = MakeStream(*policy.seed, StreamRole::kTieBreak, n);
  std::shuffle(order.begin(), order.end(), rng);
  priority_.resize(n);
  for (std::size_t rank = 0; rank < n; ++rank) priority_[order[rank]] = rank;
}

std::size_t ArgMax(std::span<const double> values, const TieBreaker& ties) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] > values[best] ||
        (values[i] == values[best] && ties.Prefers(i, best))) {
      best = i;
    }
  }
  return best;
}

}  // namespace crl::votecore
