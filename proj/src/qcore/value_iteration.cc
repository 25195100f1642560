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
#include "qcore/value_iteration.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "common/error.h"

namespace crl::qcore {

ExplicitMdp::ExplicitMdp(std::size_t states, std::size_t actions)
    : states(states),
      actions(actions),
      transition(states * actions * states, 0.0),
      reward(states * actions, 0.0),
      terminal(states, false) {}

void ExplicitMdp::Validate() const {
  if (states == 0 || actions == 0) ThrowDomain("MDP must have states and actions");
  if (transition.size() != states * actions * states ||
      reward.size() != states * actions || terminal.size() != states) {
    ThrowDomain("MDP tables have inconsistent sizes");
  }
  for (std::size_t s = 0; s < states; ++s) {
    for (std::size_t a = 0; a < actions; ++a) {
      if (!std::isfinite(R(s, a))) ThrowDomain("MDP reward must be finite");
      double total = 0.0;
      for (std::size_t n = 0; n < states; ++n) {
        const double p = T(s, a, n);
        if (!(p >= 0.0)) {
          ThrowDomain("negative transition probability at (" +
                      std::to_string(s) + ", " + std::to_string(a) + ")");
        }
        total += p;
      }
      if (std::abs(total - 1.0) > 1e-9) {
        ThrowDomain("transition row (" + std::to_string(s) + ", " +
                    std::to_string(a) + ") sums to " + std::to_string(total));
      }
    }
  }
}

QTable BellmanBackup(const ExplicitMdp& mdp, const QTable& q, double gamma) {
  std::vector<double> v(mdp.states);
  for (std::size_t s = 0; s < mdp.states; ++s) {
    const auto row = q.row(s);
    v[s] = *std::max_element(row.begin(), row.end());
  }
  QTable next(mdp.states, mdp.actions);
  for (std::size_t s = 0; s < mdp.states; ++s) {
    for (std::size_t a = 0; a < mdp.actions; ++a) {
      double continuation = 0.0;
      if (!mdp.terminal[s]) {
        for (std::size_t n = 0; n < mdp.states; ++n) {
          continuation += mdp.T(s, a, n) * v[n];
        }
      }
      next.mutable_row(s)[a] = mdp.R(s, a) + gamma * continuation;
    }
  }
  return next;
}

QTable ValueIteration(const ExplicitMdp& mdp, double gamma, double tolerance,
                      std::vector<double>* sweep_deltas) {
  mdp.Validate();
  if (!(gamma >= 0.0 && gamma < 1.0)) ThrowDomain("gamma must be in [0, 1)");
  if (!(tolerance > 0.0)) ThrowDomain("tolerance must be positive");
  QTable q(mdp.states, mdp.actions);
  while (true) {
    QTable next = BellmanBackup(mdp, q, gamma);
    double delta = 0.0;
    for (std::size_t i = 0; i < next.values().size(); ++i) {
      delta = std::max(delta, std::abs(next.values()[i] - q.values()[i]));
    }
    if (sweep_deltas != nullptr) sweep_deltas->push_back(delta);
    q = std::move(next);
    if (delta < tolerance) return q;
  }
}

}  // namespace crl::qcore
