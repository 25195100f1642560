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

#ifndef COMMITTEE_RL_HARNESS_RESULTS_H_
#define COMMITTEE_RL_HARNESS_RESULTS_H_

#include <string>
#include <string_view>
#include <vector>

#include "harness/config.h"
#include "harness/metric.h"
#include "harness/runner.h"

namespace crl::harness {

struct ExperimentResults {
  ExperimentConfig config;
  std::vector<RunLog> logs;  // env, agent, seed order
  MetricReport report;
};

// Runs the experiment and computes its report.
ExperimentResults RunAndReport(const ExperimentConfig& config,
                               std::size_t jobs = 0,
                               const ProgressFn& progress = nullptr);

// step,episode_return,seed,agent,env
std::string RunLogCsv(const RunLog& log);
// Parses a run log CSV and checks every row against the expected identity.
std::vector<EpisodeRecord> ParseRunLogCsv(std::string_view text,
                                          std::string_view source,
                                          const std::string& env,
                                          const std::string& agent,
                                          std::uint64_t seed);

std::string RunLogFileName(const RunLog& log);

// Output directory layout:
//   manifest.json          config, config hash, run list
//   runs/<env>__<agent>__seed<N>.csv
//   metrics.csv, curves.csv, table.csv (two or more agents), report.txt
//   plots/<env>.svg        only with plots = true
void WriteResults(const std::string& dir, const ExperimentResults& results,
                  bool plots);
// Writes the report files (everything except manifest and runs).
void WriteReportFiles(const std::string& dir, const ExperimentResults& results,
                      bool plots);

// Reads manifest and run logs back and recomputes the report.
ExperimentResults LoadResults(const std::string& dir);

}  // namespace crl::harness

#endif  // COMMITTEE_RL_HARNESS_RESULTS_H_
