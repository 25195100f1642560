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
#ifndef COMMITTEE_RL_QCORE_QTABLE_H_
#define COMMITTEE_RL_QCORE_QTABLE_H_

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace crl::qcore {

// Dense state x action table of Q-value estimates. Dimensions are fixed at
// construction.
class QTable {
 public:
  QTable(std::size_t states, std::size_t actions, double fill = 0.0);

  std::size_t states() const { return states_; }
  std::size_t actions() const { return actions_; }

  double value(std::size_t state, std::size_t action) const {
    return values_[state * actions_ + action];
  }
  // Bounds- and finiteness-checked write.
  void set(std::size_t state, std::size_t action, double value);

  std::span<const double> row(std::size_t state) const {
    return {values_.data() + state * actions_, actions_};
  }
  std::span<double> mutable_row(std::size_t state) {
    return {values_.data() + state * actions_, actions_};
  }
  std::span<const double> values() const { return values_; }

  void CheckIndices(std::size_t state, std::size_t action) const;

  friend bool operator==(const QTable&, const QTable&) = default;

 private:
  std::size_t states_;
  std::size_t actions_;
  std::vector<double> values_;
};

// Text checkpoint:
//   qtable v1
//   <states> <actions>
//   one line per state with <actions> values
// Values use shortest round-trip formatting, so Load(Save(t)) == t exactly.
void SaveQTable(const QTable& table, std::ostream& out);
QTable LoadQTable(std::istream& in);
void SaveQTableFile(const QTable& table, const std::string& path);
QTable LoadQTableFile(const std::string& path);

}  // namespace crl::qcore

#endif  // COMMITTEE_RL_QCORE_QTABLE_H_
