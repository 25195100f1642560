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
#ifndef COMMITTEE_RL_VOTECORE_TIEBREAK_H_
#define COMMITTEE_RL_VOTECORE_TIEBREAK_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace crl::votecore {

struct TieBreakPolicy {
  enum class Kind { kLowestIndex, kSeededRandom };

  Kind kind = Kind::kLowestIndex;
  std::optional<std::uint64_t> seed;

  static TieBreakPolicy LowestIndex() { return {}; }
  static TieBreakPolicy SeededRandom(std::uint64_t seed) {
    return {Kind::kSeededRandom, seed};
  }

  // Throws a configuration error when seed presence disagrees with kind.
  void Validate() const;

  friend bool operator==(const TieBreakPolicy&, const TieBreakPolicy&) = default;
};

// A strict priority order over n items derived from a policy. LowestIndex is
// the identity order; SeededRandom is a permutation fixed by the seed, so the
// same seed resolves the same ties the same way every time.
class TieBreaker {
 public:
  TieBreaker(const TieBreakPolicy& policy, std::size_t n);

  // Smaller priority wins a tie.
  std::size_t priority(std::size_t item) const {
    return priority_.empty() ? item : priority_[item];
  }

  bool Prefers(std::size_t a, std::size_t b) const {
    return priority(a) < priority(b);
  }

 private:
  std::vector<std::size_t> priority_;  // empty for identity
};

// Index of the maximum value; exact ties go to the preferred index.
std::size_t ArgMax(std::span<const double> values, const TieBreaker& ties);

}  // namespace crl::votecore

#endif  // COMMITTEE_RL_VOTECORE_TIEBREAK_H_
