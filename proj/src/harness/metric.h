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

#ifndef COMMITTEE_RL_HARNESS_METRIC_H_
#define COMMITTEE_RL_HARNESS_METRIC_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "harness/config.h"
#include "harness/runner.h"

namespace crl::harness {

// EMA of episode returns, indexed by episode and read at global steps:
// the value at step t is the EMA after the last episode ending at or before
// t (0 before the first episode). The EMA starts at the first return.
std::vector<double> SampledEma(const RunLog& log, const MetricSettings& settings);

// Sample points (j + 1) * sample_interval, j = 0..sample_count-1.
std::vector<std::uint64_t> SampleSteps(const MetricSettings& settings);

struct MetricEntry {
  std::string env;
  std::string agent;
  double score = 0.0;        // max of the mean curve
  double stderr_at_best = 0.0;  // across seeds, at the argmax sample
  std::size_t best_sample = 0;  // first argmax
  std::vector<double> curve;    // mean sampled EMA across seeds
  std::size_t runs = 0;

  friend bool operator==(const MetricEntry&, const MetricEntry&) = default;
};

// Logs of one agent on one env, in seed order. Throws a domain error if any
// log is shorter than the sampling horizon.
MetricEntry EmaMetric(std::span<const RunLog> logs, const MetricSettings& settings);

struct MetricReport {
  MetricSettings settings;
  std::string config_hash;
  std::vector<std::uint64_t> sample_steps;
  std::vector<std::string> envs;    // config order
  std::vector<std::string> agents;  // config order
  std::vector<MetricEntry> entries;  // env-major, agent-minor

  const MetricEntry& at(std::size_t env, std::size_t agent) const {
    return entries.at(env * agents.size() + agent);
  }

  friend bool operator==(const MetricReport&, const MetricReport&) = default;
};

// Groups RunExperiment's output (env, agent, seed order) into entries.
MetricReport BuildMetricReport(const ExperimentConfig& config,
                               std::span<const RunLog> logs);

}  // namespace crl::harness

#endif  // COMMITTEE_RL_HARNESS_METRIC_H_
