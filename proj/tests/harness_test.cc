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
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <random>
#include <string>
#include <vector>

#include "common/error.h"
#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "harness/config.h"
#include "harness/metric.h"
#include "harness/report.h"
#include "harness/results.h"
#include "harness/runner.h"

namespace crl::harness {
namespace {

using ::testing::HasSubstr;

ErrorCode CodeOf(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode{0};
}

std::string MessageOf(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

constexpr char kSmallConfig[] = R"({
  "version": 1,
  "env": {"kind": "corridor", "actions": 10},
  "agents": [{"policy": "majority"}, {"rule": "ccr", "threshold": 68}],
  "ensemble": {"k": 4},
  "learning": {"alpha": 0.2, "gamma": 0.9,
               "epsilon": {"start": 1.0, "end": 0.05, "anneal_steps": 2000}},
  "total_steps": 4000,
  "seeds": [0, 1, 2],
  "metric": {"ema_coeff": 0.99, "sample_interval": 200, "sample_count": 20}
})";

// ---- config ----

TEST(ConfigTest, ParsesDefaultsAndLabels) {
  const ExperimentConfig config = ParseExperimentConfig(kSmallConfig);
  ASSERT_EQ(config.envs.size(), 1u);
  EXPECT_EQ(config.envs[0].label, "corridor-m10");
  EXPECT_EQ(config.envs[0].corridor.states, 50u);
  ASSERT_EQ(config.agents.size(), 2u);
  EXPECT_EQ(config.agents[0].name, "majority");
  EXPECT_EQ(config.agents[1].name, "ccr@68");
  EXPECT_EQ(config.ensemble.heads, 4u);
  EXPECT_EQ(config.seeds, (std::vector<std::uint64_t>{0, 1, 2}));
  EXPECT_EQ(config.metric.horizon(), 4000u);
}

TEST(ConfigTest, DefaultSeedsAreZeroToNine) {
  const ExperimentConfig config = ParseExperimentConfig(R"({
    "version": 1, "env": {"kind": "corridor"},
    "agents": [{"policy": "average"}]})");
  ASSERT_EQ(config.seeds.size(), 10u);
  EXPECT_EQ(config.seeds.front(), 0u);
  EXPECT_EQ(config.seeds.back(), 9u);
  const ExperimentConfig ranged = ParseExperimentConfig(R"({
    "version": 1, "env": {"kind": "corridor"},
    "agents": [{"policy": "average"}], "seeds": {"count": 3, "start": 7}})");
  EXPECT_EQ(ranged.seeds, (std::vector<std::uint64_t>{7, 8, 9}));
}

TEST(ConfigTest, VersionIsChecked) {
  const auto missing = [] {
    ParseExperimentConfig(R"({"env": {"kind": "corridor"},
                              "agents": [{"policy": "average"}]})");
  };
  EXPECT_EQ(CodeOf(missing), ErrorCode::kConfig);
  EXPECT_THAT(MessageOf(missing), HasSubstr("version"));
  const auto wrong = [] {
    ParseExperimentConfig(R"({"version": 2, "env": {"kind": "corridor"},
                              "agents": [{"policy": "average"}]})");
  };
  EXPECT_THAT(MessageOf(wrong), HasSubstr("unsupported schema version 2"));
}

TEST(ConfigTest, ErrorsNameTheField) {
  const auto bad = [] {
    ParseExperimentConfig(R"({"version": 1,
      "envs": [{"kind": "corridor", "actions": "ten"}],
      "agents": [{"policy": "average"}, {"rule": "ccr", "threshold": -1}],
      "learning": {"gamma": 1.0}, "bogus": 3})");
  };
  EXPECT_EQ(CodeOf(bad), ErrorCode::kConfig);
  const std::string message = MessageOf(bad);
  EXPECT_THAT(message, HasSubstr("envs[0].actions"));
  EXPECT_THAT(message, HasSubstr("agents[1].threshold"));
  EXPECT_THAT(message, HasSubstr("learning.gamma"));
  EXPECT_THAT(message, HasSubstr("bogus: unknown field"));
}

TEST(ConfigTest, SyntaxErrorsCarryLocation) {
  const auto bad = [] { ParseExperimentConfig("{\n  \"version\": 1,\n}", "x.json"); };
  EXPECT_EQ(CodeOf(bad), ErrorCode::kParse);
  EXPECT_THAT(MessageOf(bad), HasSubstr("x.json:3:"));
}

TEST(ConfigTest, RejectsInconsistentRuns) {
  // Sampling horizon longer than the run.
  EXPECT_EQ(CodeOf([] {
              ParseExperimentConfig(R"({"version": 1,
                "env": {"kind": "corridor"}, "agents": [{"policy": "rank"}],
                "total_steps": 1000,
                "metric": {"sample_interval": 100, "sample_count": 20}})");
            }),
            ErrorCode::kConfig);
  // Duplicate agent names.
  EXPECT_EQ(CodeOf([] {
              ParseExperimentConfig(R"({"version": 1,
                "env": {"kind": "corridor"},
                "agents": [{"policy": "rank"}, {"policy": "rank"}]})");
            }),
            ErrorCode::kConfig);
  // Lottery with a nonzero threshold.
  EXPECT_EQ(CodeOf([] {
              ParseExperimentConfig(R"({"version": 1,
                "env": {"kind": "corridor"},
                "agents": [{"rule": "lottery", "threshold": 1}]})");
            }),
            ErrorCode::kConfig);
  // Repeated seed.
  EXPECT_EQ(CodeOf([] {
              ParseExperimentConfig(R"({"version": 1,
                "env": {"kind": "corridor"},
                "agents": [{"policy": "rank"}], "seeds": [1, 1]})");
            }),
            ErrorCode::kConfig);
}

TEST(ConfigTest, CanonicalJsonRoundTrips) {
  const ExperimentConfig config = ParseExperimentConfig(kSmallConfig);
  const std::string canonical = ExperimentConfigToJson(config);
  const ExperimentConfig again = ParseExperimentConfig(canonical);
  EXPECT_EQ(ExperimentConfigToJson(again), canonical);
  EXPECT_EQ(ConfigHash(again), ConfigHash(config));
  EXPECT_EQ(ConfigHash(config).size(), 16u);
  ExperimentConfig other = config;
  other.total_steps = 5000;
  EXPECT_NE(ConfigHash(other), ConfigHash(config));
  other = config;
  other.jobs = 3;
  EXPECT_EQ(ConfigHash(other), ConfigHash(config));
}

// ---- metric ----

RunLog Log(std::vector<EpisodeRecord> episodes, std::uint64_t total,
           std::uint64_t seed = 0) {
  RunLog log;
  log.env = "e";
  log.agent = "a";
  log.seed = seed;
  log.total_steps = total;
  log.episodes = std::move(episodes);
  return log;
}

RunLog Constant(double value, std::uint64_t seed = 0) {
  std::vector<EpisodeRecord> episodes;
  for (std::uint64_t t = 10; t <= 1000; t += 10) episodes.push_back({t, value});
  return Log(episodes, 1000, seed);
}

MetricSettings Settings(double coeff = 0.9) {
  MetricSettings s;
  s.ema_coeff = coeff;
  s.sample_interval = 100;
  s.sample_count = 10;
  return s;
}

// Straight from the definition: the EMA at t folds every episode that ended
// at or before t, starting from the first return.
std::vector<double> OracleEma(const RunLog& log, const MetricSettings& s) {
  std::vector<double> out;
  for (std::size_t j = 1; j <= s.sample_count; ++j) {
    const std::uint64_t t = j * s.sample_interval;
    double ema = 0.0;
    bool first = true;
    for (const auto& e : log.episodes) {
      if (e.step > t) break;
      ema = first ? e.episode_return
                  : s.ema_coeff * ema + (1.0 - s.ema_coeff) * e.episode_return;
      first = false;
    }
    out.push_back(ema);
  }
  return out;
}

TEST(MetricTest, SampleSteps) {
  EXPECT_EQ(SampleSteps(Settings()),
            (std::vector<std::uint64_t>{100, 200, 300, 400, 500, 600, 700, 800,
                                        900, 1000}));
}

TEST(MetricTest, ConstantReturnGivesThatScore) {
  const std::vector<RunLog> logs = {Constant(0.5)};
  const MetricEntry entry = EmaMetric(logs, Settings(0.999));
  EXPECT_NEAR(entry.score, 0.5, 1e-12);
  EXPECT_EQ(entry.stderr_at_best, 0.0);
  const std::vector<RunLog> zeros = {Constant(0.0), Constant(0.0, 1)};
  EXPECT_EQ(EmaMetric(zeros, Settings()).score, 0.0);
}

TEST(MetricTest, TwoSeedsAverage) {
  const std::vector<RunLog> logs = {Constant(0.0, 0), Constant(1.0, 1)};
  const MetricEntry entry = EmaMetric(logs, Settings());
  EXPECT_DOUBLE_EQ(entry.score, 0.5);
  EXPECT_DOUBLE_EQ(entry.stderr_at_best, 0.5);  // sd sqrt(1/2), over sqrt(2)
  EXPECT_EQ(entry.runs, 2u);
}

TEST(MetricTest, NoEpisodeYetReadsZero) {
  const RunLog log = Log({{450, 1.0}}, 1000);
  const auto curve = SampledEma(log, Settings());
  for (std::size_t j = 0; j < 4; ++j) EXPECT_EQ(curve[j], 0.0);
  for (std::size_t j = 4; j < 10; ++j) EXPECT_EQ(curve[j], 1.0);
}

TEST(MetricTest, ShortRunIsRejected) {
  const RunLog log = Log({{10, 1.0}}, 999);
  EXPECT_EQ(CodeOf([&] { SampledEma(log, Settings()); }), ErrorCode::kDomain);
}

TEST(MetricTest, MatchesOracleOnRandomLogs) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<EpisodeRecord> episodes;
    std::uint64_t t = 0;
    for (;;) {
      t += 1 + rng() % 60;
      if (t > 1000) break;
      episodes.push_back({t, std::uniform_real_distribution<double>(0, 1)(rng)});
    }
    const RunLog log = Log(episodes, 1000);
    const MetricSettings s = Settings(trial % 2 ? 0.999 : 0.8);
    const auto got = SampledEma(log, s);
    const auto want = OracleEma(log, s);
    ASSERT_EQ(got.size(), want.size());
    for (std::size_t j = 0; j < got.size(); ++j) EXPECT_EQ(got[j], want[j]);
  }
}

TEST(MetricTest, BoundedByReturns) {
  std::mt19937_64 rng(3);
  std::vector<RunLog> logs;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    std::vector<EpisodeRecord> episodes;
    for (std::uint64_t t = 7; t <= 1000; t += 7) {
      episodes.push_back({t, std::uniform_real_distribution<double>(0.1, 1)(rng)});
    }
    logs.push_back(Log(episodes, 1000, seed));
  }
  const MetricEntry entry = EmaMetric(logs, Settings());
  for (double v : entry.curve) {
    EXPECT_GE(v, 0.1);
    EXPECT_LE(v, 1.0);
  }
  EXPECT_EQ(entry.score, entry.curve[entry.best_sample]);
  for (double v : entry.curve) EXPECT_LE(v, entry.score);
}

TEST(MetricTest, PowerOfTwoScalingIsExact) {
  std::mt19937_64 rng(5);
  std::vector<RunLog> logs, scaled;
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    std::vector<EpisodeRecord> episodes;
    for (std::uint64_t t = 13; t <= 1000; t += 13) {
      episodes.push_back({t, std::uniform_real_distribution<double>(0, 1)(rng)});
    }
    logs.push_back(Log(episodes, 1000, seed));
    for (auto& e : episodes) e.episode_return *= 4.0;
    scaled.push_back(Log(episodes, 1000, seed));
  }
  const MetricEntry a = EmaMetric(logs, Settings());
  const MetricEntry b = EmaMetric(scaled, Settings());
  EXPECT_EQ(b.score, 4.0 * a.score);
  EXPECT_EQ(b.best_sample, a.best_sample);
  EXPECT_EQ(b.stderr_at_best, 4.0 * a.stderr_at_best);
}

// ---- report ----

TEST(ReportTest, RankingSortsByScore) {
  const std::vector<double> scores = {0.3, 0.1};
  const std::vector<std::string> names = {"first", "second"};
  EXPECT_EQ(RankAgents(scores, names), (std::vector<std::size_t>{0, 1}));
  const std::vector<double> flipped = {0.1, 0.3};
  EXPECT_EQ(RankAgents(flipped, names), (std::vector<std::size_t>{1, 0}));
  const std::vector<double> tied = {0.2, 0.2, 0.5};
  const std::vector<std::string> tied_names = {"zeta", "alpha", "mid"};
  EXPECT_EQ(RankAgents(tied, tied_names), (std::vector<std::size_t>{2, 1, 0}));
}

// ---- runner ----

TEST(RunnerTest, OneLogPerAgentAndSeed) {
  const ExperimentConfig config = ParseExperimentConfig(kSmallConfig);
  const std::vector<RunLog> logs = RunExperiment(config, 1);
  ASSERT_EQ(logs.size(), 6u);
  std::size_t i = 0;
  for (const auto& agent : config.agents) {
    for (std::uint64_t seed : config.seeds) {
      EXPECT_EQ(logs[i].agent, agent.name);
      EXPECT_EQ(logs[i].seed, seed);
      EXPECT_EQ(logs[i].env, "corridor-m10");
      EXPECT_EQ(logs[i].total_steps, 4000u);
      EXPECT_FALSE(logs[i].episodes.empty());
      EXPECT_NO_THROW(logs[i].Validate());
      ++i;
    }
  }
  EXPECT_NE(logs[0].episodes, logs[1].episodes);
}

TEST(RunnerTest, ConcurrencyDoesNotChangeResults) {
  const ExperimentConfig config = ParseExperimentConfig(kSmallConfig);
  EXPECT_EQ(RunExperiment(config, 1), RunExperiment(config, 4));
  EXPECT_EQ(RunExperiment(config, 3), RunExperiment(config, 3));
}

TEST(RunnerTest, AddingAnAgentLeavesOthersAlone) {
  const ExperimentConfig config = ParseExperimentConfig(kSmallConfig);
  ExperimentConfig bigger = config;
  AgentSpec extra;
  extra.name = "avg";
  extra.policy = ensemble::ClassicPolicy::kAverage;
  bigger.agents.insert(bigger.agents.begin(), extra);
  const RunRequest request{0, 0, 1};
  const RunRequest shifted{0, 1, 1};
  const RunLog a = ExecuteRun(config, request);
  const RunLog b = ExecuteRun(bigger, shifted);
  EXPECT_EQ(a.episodes, b.episodes);
}

TEST(RunnerTest, EpisodeStepsLandOnEpisodeEnds) {
  const ExperimentConfig config = ParseExperimentConfig(kSmallConfig);
  const RunLog log = ExecuteRun(config, {0, 0, 0});
  std::uint64_t previous = 0;
  for (const auto& e : log.episodes) {
    EXPECT_GT(e.step, previous);
    EXPECT_LE(e.step - previous, 100u);  // corridor cap
    EXPECT_TRUE(e.episode_return == 0.0 || e.episode_return == 0.1 ||
                e.episode_return == 1.0);
    previous = e.step;
  }
}

double MeanReturn(const std::vector<RunLog>& logs) {
  double sum = 0.0;
  std::size_t n = 0;
  for (const auto& log : logs) {
    for (const auto& e : log.episodes) {
      sum += e.episode_return;
      ++n;
    }
  }
  return sum / static_cast<double>(n);
}

TEST(RunnerTest, MajorityVotingBeatsRandomOnCorridor) {
  ExperimentConfig config = ParseExperimentConfig(R"({
    "version": 1,
    "env": {"kind": "corridor", "actions": 10},
    "agents": [{"policy": "majority"}],
    "learning": {"alpha": 0.2, "gamma": 0.9,
                 "epsilon": {"start": 1.0, "end": 0.05, "anneal_steps": 25000}},
    "total_steps": 50000,
    "seeds": [0, 1, 2],
    "metric": {"sample_interval": 500, "sample_count": 100}
  })");
  ExperimentConfig random = config;
  random.learning.epsilon.start = 1.0;
  random.learning.epsilon.end = 1.0;
  const double learned = MeanReturn(RunExperiment(config, 1));
  const double baseline = MeanReturn(RunExperiment(random, 1));
  EXPECT_GT(learned, baseline);
}

// ---- results files ----

std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

class ResultsTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() /
           ("crl_results_" + std::to_string(::testing::UnitTest::GetInstance()
                                                ->random_seed()) +
            "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    std::filesystem::remove_all(dir_);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }

  std::filesystem::path dir_;
};

TEST_F(ResultsTest, RunLogCsvRoundTrips) {
  RunLog log = Log({{3, 0.1}, {50, 1.0}, {51, 0.0}, {99, 0.1 + 0.2}}, 100, 4);
  const std::string csv = RunLogCsv(log);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "step,episode_return,seed,agent,env");
  EXPECT_THAT(csv, HasSubstr("\n3,0.1,4,a,e\n"));
  EXPECT_EQ(ParseRunLogCsv(csv, "log", "e", "a", 4), log.episodes);
  EXPECT_EQ(CodeOf([&] { ParseRunLogCsv(csv, "log", "e", "b", 4); }),
            ErrorCode::kParse);
  EXPECT_EQ(CodeOf([] { ParseRunLogCsv("step,x\n", "log", "e", "a", 0); }),
            ErrorCode::kParse);
  EXPECT_THAT(MessageOf([] {
                ParseRunLogCsv("step,episode_return,seed,agent,env\n1,2\n",
                               "f.csv", "e", "a", 0);
              }),
              HasSubstr("f.csv:2"));
  EXPECT_EQ(RunLogFileName(log), "e__a__seed4.csv");
}

TEST_F(ResultsTest, WriteThenLoadReproducesReport) {
  const ExperimentConfig config = ParseExperimentConfig(kSmallConfig);
  const ExperimentResults results = RunAndReport(config, 2);
  WriteResults(dir_.string(), results, /*plots=*/true);
  for (const char* name : {"manifest.json", "metrics.csv", "curves.csv",
                           "table.csv", "report.txt", "plots/corridor-m10.svg"}) {
    EXPECT_TRUE(std::filesystem::exists(dir_ / name)) << name;
  }
  const ExperimentResults loaded = LoadResults(dir_.string());
  EXPECT_EQ(loaded.logs, results.logs);
  EXPECT_EQ(loaded.report, results.report);
  EXPECT_EQ(MetricsCsv(loaded.report), ReadFile(dir_ / "metrics.csv"));
  EXPECT_EQ(CurvesCsv(loaded.report), ReadFile(dir_ / "curves.csv"));
  EXPECT_EQ(RenderReportText(loaded.report, false), ReadFile(dir_ / "report.txt"));
}

TEST_F(ResultsTest, EmptyDirectoryHasNoRuns) {
  std::filesystem::create_directories(dir_);
  EXPECT_THAT(MessageOf([&] { LoadResults(dir_.string()); }),
              HasSubstr("no run logs found"));
}

TEST_F(ResultsTest, TamperedConfigIsDetected) {
  const ExperimentConfig config = ParseExperimentConfig(kSmallConfig);
  WriteResults(dir_.string(), RunAndReport(config, 1), false);
  const auto path = dir_ / "manifest.json";
  std::string manifest = ReadFile(path);
  const auto at = manifest.find("\"total_steps\": 4000");
  ASSERT_NE(at, std::string::npos);
  manifest.replace(at, 19, "\"total_steps\": 4001");
  std::ofstream(path, std::ios::binary) << manifest;
  EXPECT_NE(CodeOf([&] { LoadResults(dir_.string()); }), ErrorCode{0});
}

TEST(ReportTextTest, MarksBestCellAndRanks) {
  const ExperimentConfig config = ParseExperimentConfig(kSmallConfig);
  const ExperimentResults results = RunAndReport(config, 1);
  const std::string plain = RenderReportText(results.report, false);
  EXPECT_THAT(plain, HasSubstr("ranking corridor-m10:"));
  EXPECT_THAT(plain, HasSubstr("*"));
  EXPECT_THAT(plain, ::testing::Not(HasSubstr("\x1b[")));
  EXPECT_THAT(RenderReportText(results.report, true), HasSubstr("\x1b[1m"));
  const CompareTable table = CompareReport(results.report);
  ASSERT_EQ(table.ranking.size(), 1u);
  EXPECT_TRUE(table.is_best(0, table.ranking[0][0]));
  EXPECT_THAT(CompareCsv(table), HasSubstr("env,rank,agent,score,stderr,best\n"));
  EXPECT_THAT(LearningCurveSvg(results.report, 0), HasSubstr("<svg"));
}

}  // namespace
}  // namespace crl::harness
