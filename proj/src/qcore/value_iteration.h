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
#ifndef COMMITTEE_RL_QCORE_VALUE_ITERATION_H_
#define COMMITTEE_RL_QCORE_VALUE_ITERATION_H_

#include <cstddef>
#include <vector>

#include "qcore/qtable.h"

namespace crl::qcore {

// Explicit finite MDP. Acting in a terminal state pays R(s,a) and ends the
// episode, so terminal rows have no continuation value.
struct ExplicitMdp {
  std::size_t states = 0;
  std::size_t actions = 0;
  std::vector<double> transition;  // [s][a][s'], rows sum to 1
  std::vector<double> reward;      // [s][a]
  std::vector<bool> terminal;      // [s]

  ExplicitMdp(std::size_t states, std::size_t actions);

  double& T(std::size_t s, std::size_t a, std::size_t next) {
    return transition[(s * actions + a) * states + next];
  }
  double T(std::size_t s, std::size_t a, std::size_t next) const {
    return transition[(s * actions + a) * states + next];
  }
  double& R(std::size_t s, std::size_t a) { return reward[s * actions + a]; }
  double R(std::size_t s, std::size_t a) const { return reward[s * actions + a]; }

  // Throws a domain error unless every T(s,a,.) row is a distribution.
  void Validate() const;
};

// Optimal Q by repeated Bellman backups until the sup-norm change of a sweep
// drops below tolerance (so the returned table's residual is below
// gamma * tolerance). Optionally records each sweep's sup-norm change.
QTable ValueIteration(const ExplicitMdp& mdp, double gamma, double tolerance,
                      std::vector<double>* sweep_deltas = nullptr);

// One Bellman optimality backup of q.
QTable BellmanBackup(const ExplicitMdp& mdp, const QTable& q, double gamma);

}  // namespace crl::qcore

#endif  // COMMITTEE_RL_QCORE_VALUE_ITERATION_H_
