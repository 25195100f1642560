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

#ifndef COMMITTEE_RL_HARNESS_REPORT_H_
#define COMMITTEE_RL_HARNESS_REPORT_H_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "harness/metric.h"

namespace crl::harness {

// Agent indices ordered by descending score; equal scores by name.
std::vector<std::size_t> RankAgents(std::span<const double> scores,
                                    std::span<const std::string> names);

// Environments x agents score table with a ranking per environment.
struct CompareTable {
  std::vector<std::string> envs;
  std::vector<std::string> agents;        // config order (table columns)
  std::vector<std::vector<double>> score;   // [env][agent]
  std::vector<std::vector<double>> stderr_;  // [env][agent]
  std::vector<std::vector<std::size_t>> ranking;  // [env] -> agent indices

  bool is_best(std::size_t env, std::size_t agent) const {
    return score[env][agent] == score[env][ranking[env].front()];
  }
};

// Requires at least two agents (configuration error otherwise).
CompareTable CompareReport(const MetricReport& report);

// Human-readable report. With color the best cell of each row is bold
// (ANSI); without, it is marked with '*'.
std::string RenderReportText(const MetricReport& report, bool color);

// env,rank,agent,score,stderr,best
std::string CompareCsv(const CompareTable& table);
// env,agent,score,stderr,best_step,runs,ema_coeff,sample_interval,sample_count
std::string MetricsCsv(const MetricReport& report);
// env,agent,step,mean_ema
std::string CurvesCsv(const MetricReport& report);
// Mean sampled EMA per agent for one environment.
std::string LearningCurveSvg(const MetricReport& report, std::size_t env);

}  // namespace crl::harness

#endif  // COMMITTEE_RL_HARNESS_REPORT_H_
