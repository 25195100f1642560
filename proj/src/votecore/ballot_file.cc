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

#include "votecore/ballot_file.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

#include "common/error.h"
#include "common/format.h"

namespace crl::votecore {
namespace {

std::string_view Trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

[[noreturn]] void Fail(const std::string& where, const std::string& message) {
  throw Error(ErrorCode::kParse, where + ": " + message);
}

std::uint64_t ParseCount(std::string_view text, const std::string& where) {
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    Fail(where, "expected a non-negative integer, got '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace

BallotFile ParseBallotFile(std::string_view text, std::string_view source) {
  BallotFile file;
  std::vector<double> utilities;
  std::size_t voters = 0;
  std::size_t candidates = 0;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view raw = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    const std::string where = std::string(source) + ":" + std::to_string(line_no);
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = Trim(line);
    if (line.empty()) continue;

    if (const auto colon = line.find(':'); colon != std::string_view::npos) {
      if (voters > 0) Fail(where, "header lines must come before the ballots");
      const std::string_view key = Trim(line.substr(0, colon));
      const std::string_view value = Trim(line.substr(colon + 1));
      if (value.empty()) Fail(where, "missing value for '" + std::string(key) + "'");
      if (key == "rule") {
        file.rule = std::string(value);
      } else if (key == "n" || key == "size") {
        file.n = ParseCount(value, where);
      } else if (key == "threshold") {
        if (value == "inf" || value == "infinity") {
          file.threshold = INFINITY;
        } else {
          try {
            file.threshold = ParseDouble(value);
          } catch (const Error&) {
            Fail(where, "threshold must be a number, got '" + std::string(value) + "'");
          }
        }
      } else if (key == "lottery_voter" || key == "voter") {
        file.lottery_voter = ParseCount(value, where);
      } else if (key == "tiebreak") {
        if (value == "lowest") {
          file.tiebreak_seed.reset();
        } else if (value.starts_with("seed=")) {
          file.tiebreak_seed = ParseCount(value.substr(5), where);
        } else {
          Fail(where, "tiebreak must be 'lowest' or 'seed=<N>'");
        }
      } else {
        Fail(where, "unknown header key '" + std::string(key) +
                        "' (rule, n, threshold, lottery_voter, tiebreak)");
      }
      continue;
    }

    std::size_t count = 0;
    std::size_t start = 0;
    const std::string row(line);
    while (start < row.size()) {
      const std::size_t stop = row.find_first_of(" \t,", start);
      const std::string_view token =
          std::string_view(row).substr(start, stop == std::string::npos
                                                  ? std::string::npos
                                                  : stop - start);
      start = stop == std::string::npos ? row.size() : stop + 1;
      if (token.empty()) continue;
      double value = 0.0;
      try {
        value = ParseDouble(token);
      } catch (const Error&) {
        Fail(where, "not a number: '" + std::string(token) + "'");
      }
      if (!std::isfinite(value)) Fail(where, "utilities must be finite");
      utilities.push_back(value);
      ++count;
    }
    if (voters == 0) {
      candidates = count;
    } else if (count != candidates) {
      Fail(where, "voter " + std::to_string(voters) + " lists " +
                      std::to_string(count) + " utilities, expected " +
                      std::to_string(candidates));
    }
    ++voters;
  }
  if (voters == 0) Fail(std::string(source), "no ballots found");
  file.profile = UtilityProfile(voters, candidates, std::move(utilities));
  return file;
}

BallotFile LoadBallotFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read ballot file " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ParseBallotFile(buffer.str(), path);
}

}  // namespace crl::votecore
