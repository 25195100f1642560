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
#include "qcore/qtable.h"

#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "common/error.h"
#include "common/format.h"

namespace crl::qcore {

QTable::QTable(std::size_t states, std::size_t actions, double fill)
    : states_(states), actions_(actions) {
  if (states == 0 || actions == 0) {
    ThrowDomain("Q-table dimensions must be positive");
  }
  if (!std::isfinite(fill)) ThrowDomain("Q-table fill value must be finite");
  values_.assign(states * actions, fill);
}

void QTable::CheckIndices(std::size_t state, std::size_t action) const {
  if (state >= states_) {
    ThrowDomain("state " + std::to_string(state) + " out of range [0, " +
                std::to_string(states_) + ")");
  }
  if (action >= actions_) {
    ThrowDomain("action " + std::to_string(action) + " out of range [0, " +
                std::to_string(actions_) + ")");
  }
}

void QTable::set(std::size_t state, std::size_t action, double value) {
  CheckIndices(state, action);
  if (!std::isfinite(value)) ThrowDomain("Q-value must be finite");
  values_[state * actions_ + action] = value;
}

void SaveQTable(const QTable& table, std::ostream& out) {
  out << "qtable v1\n" << table.states() << ' ' << table.actions() << '\n';
  for (std::size_t s = 0; s < table.states(); ++s) {
    const auto row = table.row(s);
    for (std::size_t a = 0; a < row.size(); ++a) {
      if (a > 0) out << ' ';
      out << FormatDouble(row[a]);
    }
    out << '\n';
  }
}

QTable LoadQTable(std::istream& in) {
  std::string magic;
  std::getline(in, magic);
  if (magic != "qtable v1") {
    throw Error(ErrorCode::kParse, "line 1: expected 'qtable v1' header");
  }
  std::size_t states = 0;
  std::size_t actions = 0;
  if (!(in >> states >> actions)) {
    throw Error(ErrorCode::kParse, "line 2: expected '<states> <actions>'");
  }
  QTable table(states, actions);
  std::string token;
  for (std::size_t s = 0; s < states; ++s) {
    for (std::size_t a = 0; a < actions; ++a) {
      if (!(in >> token)) {
        throw Error(ErrorCode::kParse,
                    "line " + std::to_string(s + 3) + ": expected " +
                        std::to_string(actions) + " values");
      }
      const double v = ParseDouble(token);
      if (!std::isfinite(v)) {
        throw Error(ErrorCode::kParse,
                    "line " + std::to_string(s + 3) + ": non-finite value");
      }
      table.mutable_row(s)[a] = v;
    }
  }
  if (in >> token) {
    throw Error(ErrorCode::kParse, "trailing data after " +
                                       std::to_string(states) + " rows");
  }
  return table;
}

void SaveQTableFile(const QTable& table, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path);
  SaveQTable(table, out);
  if (!out) throw Error(ErrorCode::kIo, "failed writing " + path);
}

QTable LoadQTableFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot read " + path);
  try {
    return LoadQTable(in);
  } catch (const Error& e) {
    throw Error(e.code(), path + ": " + e.what());
  }
}

}  // namespace crl::qcore
