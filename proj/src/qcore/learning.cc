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
#include "qcore/learning.h"

#include <algorithm>
#include <cmath>

#include "common/error.h"

namespace crl::qcore {

void EpsilonSchedule::Validate() const {
  if (!(end >= 0.0 && end <= start && start <= 1.0)) {
    ThrowConfig("epsilon schedule needs 0 <= end <= start <= 1");
  }
  if (anneal_steps == 0) ThrowConfig("epsilon anneal_steps must be positive");
}

void LearningParams::Validate() const {
  if (!(alpha > 0.0 && alpha <= 1.0)) ThrowConfig("alpha must be in (0, 1]");
  if (!(gamma >= 0.0 && gamma < 1.0)) ThrowConfig("gamma must be in [0, 1)");
  epsilon.Validate();
}

double QUpdate(QTable& table, const Transition& sample, double alpha,
               double gamma) {
  table.CheckIndices(sample.state, sample.action);
  table.CheckIndices(sample.next_state, 0);
  if (!std::isfinite(sample.reward)) ThrowDomain("reward must be finite");
  double bootstrap = 0.0;
  if (!sample.terminal) {
    const auto next = table.row(sample.next_state);
    bootstrap = *std::max_element(next.begin(), next.end());
  }
  double& q = table.mutable_row(sample.state)[sample.action];
  q = (1.0 - alpha) * q + alpha * (sample.reward + gamma * bootstrap);
  return q;
}

std::size_t GreedyAction(const QTable& table, std::size_t state,
                         const votecore::TieBreakPolicy& tiebreak) {
  table.CheckIndices(state, 0);
  return votecore::ArgMax(table.row(state),
                          votecore::TieBreaker(tiebreak, table.actions()));
}

double EpsilonAt(const EpsilonSchedule& schedule, std::uint64_t step) {
  if (step >= schedule.anneal_steps) return schedule.end;
  const double fraction = static_cast<double>(step) /
                          static_cast<double>(schedule.anneal_steps);
  return schedule.start + fraction * (schedule.end - schedule.start);
}

}  // namespace crl::qcore
