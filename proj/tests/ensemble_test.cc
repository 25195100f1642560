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
#include <vector>

#include "common/error.h"
#include "ensemble/agent.h"
#include "gtest/gtest.h"
#include "test_util.h"
#include "votecore/election.h"

namespace crl::ensemble {
namespace {

using qcore::QTable;
using votecore::RuleKind;

ErrorCode CodeOf(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode{0};
}

// One-state heads from explicit rows.
std::vector<QTable> Heads(const std::vector<std::vector<double>>& rows) {
  std::vector<QTable> heads;
  for (const auto& row : rows) {
    QTable q(1, row.size());
    for (std::size_t a = 0; a < row.size(); ++a) q.set(0, a, row[a]);
    heads.push_back(q);
  }
  return heads;
}

AgentConfig Config(PolicyKind policy, std::size_t heads, double epsilon,
                   std::uint64_t seed = 1) {
  AgentConfig c;
  c.heads = heads;
  c.policy = policy;
  c.params.epsilon = {epsilon, epsilon, 1};
  c.seed = seed;
  return c;
}

// |observed - expected| within 3 standard deviations of a binomial count.
void ExpectFrequency(std::size_t count, std::size_t n, double p) {
  const double sigma = std::sqrt(static_cast<double>(n) * p * (1.0 - p));
  EXPECT_NEAR(static_cast<double>(count), static_cast<double>(n) * p, 3.0 * sigma)
      << "p = " << p;
}

TEST(UtilitiesTest, RawCopiesRow) {
  EnsembleAgent agent(Config(ClassicPolicy::kAverage, 1, 0.0), Heads({{1, 2}}));
  EXPECT_EQ(agent.Utilities(0), votecore::UtilityProfile::FromRows({{1, 2}}));
}

TEST(UtilitiesTest, SoftmaxRows) {
  auto c = Config(ClassicPolicy::kAverage, 1, 0.0);
  c.utility_mode = UtilityMode::kSoftmax;
  EnsembleAgent flat(c, Heads({{0, 0}}));
  EXPECT_EQ(flat.Utilities(0).utility(0, 0), 0.5);
  EXPECT_EQ(flat.Utilities(0).utility(0, 1), 0.5);
  EnsembleAgent skew(c, Heads({{std::log(3.0), std::log(1.0)}}));
  EXPECT_NEAR(skew.Utilities(0).utility(0, 0), 0.75, 1e-15);
  EXPECT_NEAR(skew.Utilities(0).utility(0, 1), 0.25, 1e-15);
}

TEST(UtilitiesTest, SoftmaxSumsToOne) {
  crl::testing::Gen gen(31);
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<double> row(gen.Int(1, 12));
    const double scale = trial % 2 == 0 ? 1.0 : 800.0;
    for (double& v : row) v = gen.Real(-scale, scale);
    const auto p = Softmax(row);
    double total = 0.0;
    for (double x : p) {
      ASSERT_GE(x, 0.0);
      total += x;
    }
    ASSERT_NEAR(total, 1.0, 1e-12);
  }
}

TEST(AgentInitTest, HeadsSmallDistinctAndSeeded) {
  const auto c = Config(ClassicPolicy::kAverage, 10, 0.0, 42);
  EnsembleAgent a(c, 6, 5);
  EnsembleAgent b(c, 6, 5);
  auto other = c;
  other.seed = 43;
  EnsembleAgent d(other, 6, 5);
  EXPECT_EQ(a.heads(), b.heads());
  EXPECT_NE(a.heads(), d.heads());
  for (std::size_t i = 0; i < 10; ++i) {
    for (double v : a.heads()[i].values()) {
      EXPECT_GT(v, -0.01);
      EXPECT_LT(v, 0.01);
    }
    if (i > 0) EXPECT_NE(a.heads()[i], a.heads()[0]);
  }
}

TEST(AgentInitTest, Validation) {
  EXPECT_EQ(CodeOf([] {
              EnsembleAgent(Config(ClassicPolicy::kAverage, 2, 0.0), Heads({{1, 2}}));
            }),
            ErrorCode::kConfig);
  EXPECT_EQ(CodeOf([] {
              EnsembleAgent(Config(CommitteePolicy{RuleKind::kLottery, 1.0}, 1, 0.0),
                            Heads({{1, 2}}));
            }),
            ErrorCode::kConfig);
  EXPECT_EQ(CodeOf([] {
              EnsembleAgent(Config(CommitteePolicy{RuleKind::kBorda, -1.0}, 1, 0.0),
                            Heads({{1, 2}}));
            }),
            ErrorCode::kConfig);
  auto masked = Config(ClassicPolicy::kAverage, 1, 0.0);
  masked.update_mask_p = 1.5;
  EXPECT_EQ(CodeOf([&] { EnsembleAgent(masked, Heads({{1, 2}})); }),
            ErrorCode::kConfig);
}

TEST(ActTest, FullExplorationIsUniform) {
  EnsembleAgent agent(Config(CommitteePolicy{RuleKind::kMajorityJudgment, 0.0}, 2, 1.0),
                      Heads({{9, 0, 0, 0}, {9, 0, 0, 0}}));
  std::vector<std::size_t> counts(4, 0);
  const std::size_t n = 100'000;
  for (std::size_t t = 0; t < n; ++t) ++counts[agent.Act(0, t)];
  for (std::size_t c : counts) ExpectFrequency(c, n, 0.25);
}

TEST(ActTest, SingletonCommitteeIsDeterministic) {
  EnsembleAgent agent(Config(CommitteePolicy{RuleKind::kMajorityJudgment, 0.0}, 1, 0.0),
                      Heads({{5, 1, 1}}));
  for (std::uint64_t t = 0; t < 1000; ++t) ASSERT_EQ(agent.Act(0, t), 0u);
}

TEST(ActTest, SamplesUniformlyFromCommittee) {
  EnsembleAgent agent(
      Config(CommitteePolicy{RuleKind::kMajorityJudgment, 10.0}, 3, 0.0),
      Heads({{3, 2, 1}, {3, 2, 1}, {1, 2, 3}}));
  std::vector<std::size_t> counts(3, 0);
  const std::size_t n = 100'000;
  for (std::size_t t = 0; t < n; ++t) ++counts[agent.Act(0, t)];
  EXPECT_EQ(counts[2], 0u);
  ExpectFrequency(counts[0], n, 0.5);
  ExpectFrequency(counts[1], n, 0.5);
}

TEST(ActTest, EpsilonMixesUniformAndCommittee) {
  // Committee {a0, a1} out of four actions.
  EnsembleAgent agent(
      Config(CommitteePolicy{RuleKind::kMajorityJudgment, 10.0}, 3, 0.3),
      Heads({{3, 2, 1, 0}, {3, 2, 1, 0}, {1, 2, 3, 0}}));
  ASSERT_EQ(agent.Elect(0).members, (std::vector<std::size_t>{0, 1}));
  std::vector<std::size_t> counts(4, 0);
  const std::size_t n = 100'000;
  for (std::size_t t = 0; t < n; ++t) ++counts[agent.Act(0, t)];
  ExpectFrequency(counts[0], n, 0.3 / 4 + 0.7 / 2);
  ExpectFrequency(counts[1], n, 0.3 / 4 + 0.7 / 2);
  ExpectFrequency(counts[2], n, 0.3 / 4);
  ExpectFrequency(counts[3], n, 0.3 / 4);
}

TEST(ActTest, SameSeedSameActions) {
  const auto c = Config(CommitteePolicy{RuleKind::kChamberlinCourant, 5.0}, 4, 0.2, 9);
  EnsembleAgent a(c, 3, 6);
  EnsembleAgent b(c, 3, 6);
  for (std::uint64_t t = 0; t < 2000; ++t) ASSERT_EQ(a.Act(t % 3, t), b.Act(t % 3, t));
}

TEST(ActTest, ElectNeedsCommitteePolicy) {
  EnsembleAgent agent(Config(ClassicPolicy::kAverage, 1, 0.0), Heads({{1, 2}}));
  EXPECT_EQ(CodeOf([&] { agent.Elect(0); }), ErrorCode::kConfig);
}

TEST(ClassicTest, MajorityVoting) {
  const auto heads = Heads({{5, 1, 0}, {4, 0, 1}, {0, 1, 7}});
  EXPECT_EQ(ClassicAction(ClassicPolicy::kMajorityVoting, heads, 0, {}, 0), 0u);
}

TEST(ClassicTest, AverageTieGoesToLowestIndex) {
  const auto heads = Heads({{1, 3}, {3, 1}});
  EXPECT_EQ(ClassicAction(ClassicPolicy::kAverage, heads, 0, {}, 0), 0u);
}

TEST(ClassicTest, RankVotingSumsPreferences) {
  // prefs: [2,1,0], [2,1,0], [0,1,2] -> totals [4,3,2].
  const auto heads = Heads({{3, 2, 1}, {3, 2, 1}, {1, 2, 3}});
  EXPECT_EQ(ClassicAction(ClassicPolicy::kRankVoting, heads, 0, {}, 0), 0u);
  // prefs: [0,2,1], [2,1,0], [0,2,1] -> totals [2,5,2].
  const auto second = Heads({{0, 9, 5}, {9, 5, 0}, {0, 9, 5}});
  EXPECT_EQ(ClassicAction(ClassicPolicy::kRankVoting, second, 0, {}, 0), 1u);
}

TEST(ClassicTest, BootstrappedUsesChosenHead) {
  const auto heads = Heads({{1, 0, 0}, {0, 0, 1}});
  EXPECT_EQ(ClassicAction(ClassicPolicy::kBootstrapped, heads, 0, {}, 0), 0u);
  EXPECT_EQ(ClassicAction(ClassicPolicy::kBootstrapped, heads, 0, {}, 1), 2u);
  EXPECT_EQ(CodeOf([&] {
              ClassicAction(ClassicPolicy::kBootstrapped, heads, 0, {}, 2);
            }),
            ErrorCode::kConfig);
}

TEST(ClassicTest, BoltzmannAdditionAverage) {
  const auto heads = Heads({{std::log(3.0), 0.0}, {0.0, std::log(3.0)}});
  const auto p = BoltzmannAdditionDistribution(heads, 0);
  EXPECT_NEAR(p[0], 0.5, 1e-15);
  EXPECT_NEAR(p[1], 0.5, 1e-15);
  EXPECT_EQ(CodeOf([&] {
              ClassicAction(ClassicPolicy::kBoltzmannAddition, heads, 0, {}, 0);
            }),
            ErrorCode::kConfig);
}

TEST(ClassicTest, BoltzmannAdditionSumsToOne) {
  crl::testing::Gen gen(32);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t k = gen.Int(1, 10);
    const std::size_t m = gen.Int(1, 10);
    std::vector<std::vector<double>> rows(k, std::vector<double>(m));
    for (auto& row : rows) {
      for (double& v : row) v = gen.Real(-5, 5);
    }
    const auto p = BoltzmannAdditionDistribution(Heads(rows), 0);
    double total = 0.0;
    for (double x : p) total += x;
    ASSERT_NEAR(total, 1.0, 1e-12);
  }
}

TEST(ClassicTest, BoltzmannAgentSamplesDistribution) {
  EnsembleAgent agent(Config(ClassicPolicy::kBoltzmannAddition, 2, 0.0),
                      Heads({{std::log(3.0), 0.0}, {std::log(3.0), 0.0}}));
  std::size_t zeros = 0;
  const std::size_t n = 100'000;
  for (std::size_t t = 0; t < n; ++t) zeros += agent.Act(0, t) == 0 ? 1 : 0;
  ExpectFrequency(zeros, n, 0.75);
}

TEST(LotteryTest, ActFollowsBootstrapHead) {
  crl::testing::Gen gen(33);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t k = gen.Int(1, 10);
    auto c = Config(CommitteePolicy{RuleKind::kLottery, 0.0}, k, 0.0, trial);
    EnsembleAgent agent(c, 4, gen.Int(2, 8));
    for (int episode = 0; episode < 5; ++episode) {
      for (std::size_t s = 0; s < 4; ++s) {
        ASSERT_EQ(agent.Act(s, 0),
                  ClassicAction(ClassicPolicy::kBootstrapped, agent, s));
      }
      agent.EndEpisode();
    }
  }
}

TEST(ObserveTest, AllHeadsShareTheUpdate) {
  const auto c = Config(ClassicPolicy::kAverage, 3, 0.0);
  EnsembleAgent agent(c, Heads({{0, 0}, {0, 0}, {0, 0}}));
  agent.Observe({0, 1, 1.0, 0, true});
  for (const auto& head : agent.heads()) EXPECT_EQ(head.value(0, 1), 0.2);
}

TEST(ObserveTest, MaskExtremes) {
  auto c = Config(ClassicPolicy::kAverage, 4, 0.0);
  const auto start = Heads({{0.1, 0.2}, {0.3, 0.4}, {0.5, 0.6}, {0.7, 0.8}});
  c.update_mask_p = 0.0;
  EnsembleAgent none(c, start);
  none.Observe({0, 0, 1.0, 0, false});
  EXPECT_EQ(none.heads(), start);

  c.update_mask_p = 1.0;
  EnsembleAgent all(c, start);
  c.update_mask_p.reset();
  EnsembleAgent plain(c, start);
  for (int i = 0; i < 10; ++i) {
    all.Observe({0, static_cast<std::size_t>(i % 2), 0.5, 0, i % 3 == 0});
    plain.Observe({0, static_cast<std::size_t>(i % 2), 0.5, 0, i % 3 == 0});
  }
  EXPECT_EQ(all.heads(), plain.heads());
}

TEST(ObserveTest, PartialMaskUpdatesSomeHeads) {
  auto c = Config(ClassicPolicy::kAverage, 10, 0.0);
  c.update_mask_p = 0.5;
  EnsembleAgent agent(c, Heads(std::vector<std::vector<double>>(10, {0.0, 0.0})));
  agent.Observe({0, 0, 1.0, 0, true});
  std::size_t changed = 0;
  for (const auto& head : agent.heads()) changed += head.value(0, 0) != 0.0 ? 1 : 0;
  EXPECT_GT(changed, 0u);
  EXPECT_LT(changed, 10u);
}

TEST(EndEpisodeTest, SingleHead) {
  EnsembleAgent agent(Config(ClassicPolicy::kBootstrapped, 1, 0.0), 2, 2);
  for (int i = 0; i < 100; ++i) {
    agent.EndEpisode();
    ASSERT_EQ(agent.bootstrap_head(), 0u);
  }
}

TEST(EndEpisodeTest, UniformAndReproducible) {
  const auto c = Config(ClassicPolicy::kBootstrapped, 10, 0.0, 77);
  EnsembleAgent a(c, 1, 2);
  EnsembleAgent b(c, 1, 2);
  std::vector<std::size_t> counts(10, 0);
  const std::size_t n = 100'000;
  for (std::size_t i = 0; i < n; ++i) {
    a.EndEpisode();
    b.EndEpisode();
    ASSERT_EQ(a.bootstrap_head(), b.bootstrap_head());
    ++counts[a.bootstrap_head()];
  }
  for (std::size_t count : counts) ExpectFrequency(count, n, 0.1);
}

TEST(SoftmaxJudgeTest, GreedyOrderFollowsColumnSums) {
  crl::testing::Gen gen(34);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t k = gen.Int(1, 10);
    const std::size_t m = gen.Int(2, 10);
    auto c = Config(CommitteePolicy{RuleKind::kMajorityJudgment, 0.0}, k, 0.0, trial);
    c.utility_mode = UtilityMode::kSoftmax;
    c.init_scale = 2.0;
    EnsembleAgent agent(c, 1, m);
    const auto profile = agent.Utilities(0);
    const auto order =
        votecore::ElectTopK(votecore::ScoringRule::Of(RuleKind::kMajorityJudgment),
                            profile, m)
            .members;
    for (std::size_t l = 1; l < m; ++l) {
      double prev = 0.0;
      double next = 0.0;
      for (std::size_t i = 0; i < k; ++i) {
        prev += profile.utility(i, order[l - 1]);
        next += profile.utility(i, order[l]);
      }
      ASSERT_GE(prev, next - 1e-12);
    }
  }
}

}  // namespace
}  // namespace crl::ensemble
