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

#ifndef COMMITTEE_RL_VOTECORE_BALLOT_FILE_H_
#define COMMITTEE_RL_VOTECORE_BALLOT_FILE_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "votecore/profile.h"

namespace crl::votecore {

// Ballot file:
//   # comment lines and blank lines are ignored
//   rule: ccr              optional header lines, "key: value"
//   n: 2                   (rule, n, threshold, lottery_voter, tiebreak)
//   3 2 1                  one line of utilities per voter, separated by
//   3 2 1                  spaces, tabs or commas
//   1 2 3
// Header keys must precede the first ballot line. "tiebreak" is "lowest"
// or "seed=<N>". "threshold" accepts "inf".
struct BallotFile {
  UtilityProfile profile{1, 1, {0.0}};
  std::optional<std::string> rule;
  std::optional<std::size_t> n;
  std::optional<double> threshold;
  std::optional<std::size_t> lottery_voter;
  std::optional<std::uint64_t> tiebreak_seed;  // absent: lowest index
};

// Throws a parse error anchored at "<source>:<line>".
BallotFile ParseBallotFile(std::string_view text,
                           std::string_view source = "ballots");
BallotFile LoadBallotFile(const std::string& path);

}  // namespace crl::votecore

#endif  // COMMITTEE_RL_VOTECORE_BALLOT_FILE_H_
