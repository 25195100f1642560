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
#ifndef COMMITTEE_RL_QCORE_LEARNING_H_
#define COMMITTEE_RL_QCORE_LEARNING_H_

#include <cstddef>
#include <cstdint>

#include "qcore/qtable.h"
#include "votecore/tiebreak.h"

namespace crl::qcore {

// Linear anneal from start to end over anneal_steps, then flat.
struct EpsilonSchedule {
  double start = 1.0;
  double end = 0.001;
  std::uint64_t anneal_steps = 1'000'000;

  void Validate() const;
};

struct LearningParams {
  double alpha = 0.2;  // (0, 1]
  double gamma = 0.9;  // [0, 1)
  EpsilonSchedule epsilon;

  void Validate() const;
};

struct Transition {
  std::size_t state = 0;
  std::size_t action = 0;
  double reward = 0.0;
  std::size_t next_state = 0;
  // Set only when next_state is a real terminal; time-limit cutoffs bootstrap.
  bool terminal = false;
};

// Q(s,a) <- (1 - alpha) Q(s,a) + alpha (r + gamma max_a' Q(s',a')), with the
// max term dropped on terminal transitions. Only entry (s,a) changes. Returns
// the new value.
double QUpdate(QTable& table, const Transition& sample, double alpha,
               double gamma);
inline double QUpdate(QTable& table, const Transition& sample,
                      const LearningParams& params) {
  return QUpdate(table, sample, params.alpha, params.gamma);
}

std::size_t GreedyAction(
    const QTable& table, std::size_t state,
    const votecore::TieBreakPolicy& tiebreak =
        votecore::TieBreakPolicy::LowestIndex());

double EpsilonAt(const EpsilonSchedule& schedule, std::uint64_t step);

}  // namespace crl::qcore

#endif  // COMMITTEE_RL_QCORE_LEARNING_H_
