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

#include "harness/metric.h"

#include <cmath>

#include "common/error.h"

namespace crl::harness {

std::vector<std::uint64_t> SampleSteps(const MetricSettings& settings) {
  std::vector<std::uint64_t> steps(settings.sample_count);
  for (std::size_t j = 0; j < steps.size(); ++j) {
    steps[j] = (j + 1) * settings.sample_interval;
  }
  return steps;
}

std::vector<double> SampledEma(const RunLog& log, const MetricSettings& settings) {
  settings.Validate();
  if (log.total_steps < settings.horizon()) {
    ThrowDomain("run " + log.env + "/" + log.agent + "/seed" +
                std::to_string(log.seed) + " has " +
                std::to_string(log.total_steps) +
                " steps, shorter than the sampling horizon " +
                std::to_string(settings.sample_interval) + " x " +
                std::to_string(settings.sample_count) + " = " +
                std::to_string(settings.horizon()));
  }
  const double keep = settings.ema_coeff;
  std::vector<double> samples;
  samples.reserve(settings.sample_count);
  double ema = 0.0;
  bool started = false;
  std::size_t next = 0;
  for (std::uint64_t step : SampleSteps(settings)) {
    while (next < log.episodes.size() && log.episodes[next].step <= step) {
      const double r = log.episodes[next].episode_return;
      ema = started ? keep * ema + (1.0 - keep) * r : r;
      started = true;
      ++next;
    }
    samples.push_back(ema);
  }
  return samples;
}

MetricEntry EmaMetric(std::span<const RunLog> logs, const MetricSettings& settings) {
  if (logs.empty()) ThrowDomain("EMA metric needs at least one run log");
  MetricEntry entry;
  entry.env = logs.front().env;
  entry.agent = logs.front().agent;
  entry.runs = logs.size();
  std::vector<std::vector<double>> curves;
  curves.reserve(logs.size());
  for (const RunLog& log : logs) curves.push_back(SampledEma(log, settings));

  const double n = static_cast<double>(logs.size());
  entry.curve.assign(settings.sample_count, 0.0);
  for (std::size_t j = 0; j < settings.sample_count; ++j) {
    double sum = 0.0;
    for (const auto& c : curves) sum += c[j];
    entry.curve[j] = sum / n;
  }
  entry.best_sample = 0;
  for (std::size_t j = 1; j < entry.curve.size(); ++j) {
    if (entry.curve[j] > entry.curve[entry.best_sample]) entry.best_sample = j;
  }
  entry.score = entry.curve[entry.best_sample];
  if (logs.size() > 1) {
    double squares = 0.0;
    for (const auto& c : curves) {
      const double d = c[entry.best_sample] - entry.score;
      squares += d * d;
    }
    entry.stderr_at_best = std::sqrt(squares / (n - 1.0)) / std::sqrt(n);
  }
  return entry;
}

MetricReport BuildMetricReport(const ExperimentConfig& config,
                               std::span<const RunLog> logs) {
  const std::size_t seeds = config.seeds.size();
  if (logs.size() != config.envs.size() * config.agents.size() * seeds) {
    ThrowDomain("expected " +
                std::to_string(config.envs.size() * config.agents.size() * seeds) +
                " run logs, got " + std::to_string(logs.size()));
  }
  MetricReport report;
  report.settings = config.metric;
  report.config_hash = ConfigHash(config);
  report.sample_steps = SampleSteps(config.metric);
  for (const auto& env : config.envs) report.envs.push_back(env.label);
  for (const auto& agent : config.agents) report.agents.push_back(agent.name);
  std::size_t offset = 0;
  for (std::size_t e = 0; e < config.envs.size(); ++e) {
    for (std::size_t a = 0; a < config.agents.size(); ++a) {
      const auto group = logs.subspan(offset, seeds);
      for (std::size_t s = 0; s < seeds; ++s) {
        if (group[s].env != report.envs[e] || group[s].agent != report.agents[a] ||
            group[s].seed != config.seeds[s]) {
          ThrowDomain("run logs are not in (env, agent, seed) config order");
        }
      }
      report.entries.push_back(EmaMetric(group, config.metric));
      offset += seeds;
    }
  }
  return report;
}

}  // namespace crl::harness
