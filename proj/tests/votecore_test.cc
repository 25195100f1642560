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
#include "gtest/gtest.h"
#include "test_util.h"
#include "votecore/ballot_file.h"
#include "votecore/election.h"
#include "votecore/profile.h"
#include "votecore/scoring.h"
#include "votecore/tiebreak.h"

namespace crl::votecore {
namespace {

using crl::testing::ThreeVoterProfile;
using Members = std::vector<std::size_t>;

ErrorCode CodeOf(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode{0};
}

TEST(ProfileTest, RejectsBadShapes) {
  EXPECT_EQ(CodeOf([] { UtilityProfile(0, 3, {}); }), ErrorCode::kDomain);
  EXPECT_EQ(CodeOf([] { UtilityProfile(1, 0, {}); }), ErrorCode::kDomain);
  EXPECT_EQ(CodeOf([] { UtilityProfile(1, 2, {1.0}); }), ErrorCode::kDomain);
  EXPECT_EQ(CodeOf([] { UtilityProfile(1, 2, {1.0, NAN}); }), ErrorCode::kDomain);
  EXPECT_EQ(CodeOf([] { UtilityProfile::FromRows({{1, 2}, {3}}); }),
            ErrorCode::kDomain);
}

TEST(RankPositionsTest, SortedBallot) {
  const auto p = UtilityProfile::FromRows({{3, 2, 1}});
  EXPECT_EQ(RankPositions(p, 0), (std::vector<std::size_t>{1, 2, 3}));
}

TEST(RankPositionsTest, AllTiedUsesIndexOrder) {
  const auto p = UtilityProfile::FromRows({{1, 1, 1}});
  EXPECT_EQ(RankPositions(p, 0), (std::vector<std::size_t>{1, 2, 3}));
}

TEST(RankPositionsTest, OrderPreservingRelabel) {
  const auto p = UtilityProfile::FromRows({{0.2, 0.5, 0.3}});
  EXPECT_EQ(RankPositions(p, 0), (std::vector<std::size_t>{3, 1, 2}));
}

TEST(RankPositionsTest, VoterOutOfRange) {
  const auto p = ThreeVoterProfile();
  EXPECT_EQ(CodeOf([&] { RankPositions(p, 3); }), ErrorCode::kDomain);
}

TEST(ScoreTest, ThreeVoterExamples) {
  const auto p = ThreeVoterProfile();
  EXPECT_EQ(ScoreCommittee(ScoringRule::Of(RuleKind::kPlurality), p, Members{0}), 2.0);
  EXPECT_EQ(ScoreCommittee(ScoringRule::Of(RuleKind::kBorda), p, Members{0}), 4.0);
  EXPECT_EQ(ScoreCommittee(ScoringRule::Of(RuleKind::kMajorityJudgment), p,
                           Members{0, 1}),
            13.0);
  EXPECT_EQ(ScoreCommittee(ScoringRule::Of(RuleKind::kChamberlinCourant), p,
                           Members{0, 2}),
            6.0);
}

TEST(ScoreTest, BlocCountsTopOfCommitteeSize) {
  const auto p = ThreeVoterProfile();
  // Top-2 sets: {a0,a1}, {a0,a1}, {a2,a1}.
  EXPECT_EQ(ScoreCommittee(ScoringRule::Of(RuleKind::kBloc), p, Members{0, 1}), 5.0);
  EXPECT_EQ(ScoreCommittee(ScoringRule::Of(RuleKind::kBloc), p, Members{1, 2}), 4.0);
}

TEST(ScoreTest, LotteryReadsOnlyMaskedVoter) {
  const auto p = ThreeVoterProfile();
  EXPECT_EQ(ScoreCommittee(ScoringRule::Lottery(2), p, Members{0, 1}), 2.0);
  EXPECT_EQ(ScoreCommittee(ScoringRule::Lottery(0), p, Members{2}), 1.0);
}

TEST(ScoreTest, Errors) {
  const auto p = ThreeVoterProfile();
  const auto borda = ScoringRule::Of(RuleKind::kBorda);
  EXPECT_EQ(CodeOf([&] { ScoreCommittee(borda, p, Members{}); }), ErrorCode::kDomain);
  EXPECT_EQ(CodeOf([&] { ScoreCommittee(borda, p, Members{3}); }), ErrorCode::kDomain);
  EXPECT_EQ(CodeOf([&] { ScoreCommittee(borda, p, Members{1, 1}); }),
            ErrorCode::kDomain);
  EXPECT_EQ(CodeOf([&] {
              ScoreCommittee(ScoringRule::Of(RuleKind::kLottery), p, Members{0});
            }),
            ErrorCode::kConfig);
  EXPECT_EQ(CodeOf([&] { ScoreCommittee(ScoringRule::Lottery(3), p, Members{0}); }),
            ErrorCode::kDomain);
  EXPECT_EQ(CodeOf([&] {
              ScoreCommittee(ScoringRule{RuleKind::kBorda, 0}, p, Members{0});
            }),
            ErrorCode::kConfig);
}

TEST(RuleNameTest, RoundTripAndAliases) {
  for (auto kind : {RuleKind::kPlurality, RuleKind::kBloc,
                    RuleKind::kChamberlinCourant, RuleKind::kBorda,
                    RuleKind::kMajorityJudgment, RuleKind::kLottery}) {
    EXPECT_EQ(ParseRuleName(RuleName(kind)), kind);
  }
  EXPECT_EQ(ParseRuleName("sntv"), RuleKind::kPlurality);
  EXPECT_EQ(ParseRuleName("chamberlin-courant"), RuleKind::kChamberlinCourant);
  EXPECT_FALSE(ParseRuleName("pav").has_value());
}

TEST(ElectTopKTest, ThreeVoterExamples) {
  const auto p = ThreeVoterProfile();
  const auto plurality = ElectTopK(ScoringRule::Of(RuleKind::kPlurality), p, 1);
  EXPECT_EQ(plurality.members, (Members{0}));
  EXPECT_EQ(plurality.score, 2.0);
  const auto ccr = ElectTopK(ScoringRule::Of(RuleKind::kChamberlinCourant), p, 2);
  EXPECT_EQ(ccr.members, (Members{0, 2}));
  EXPECT_EQ(ccr.score, 6.0);
  const auto borda = ElectTopK(ScoringRule::Of(RuleKind::kBorda), p, 3);
  EXPECT_EQ(crl::testing::Sorted(borda.members), (Members{0, 1, 2}));
}

TEST(ElectTopKTest, SizeOutOfRange) {
  const auto p = ThreeVoterProfile();
  const auto rule = ScoringRule::Of(RuleKind::kBorda);
  EXPECT_EQ(CodeOf([&] { ElectTopK(rule, p, 0); }), ErrorCode::kDomain);
  EXPECT_EQ(CodeOf([&] { ElectTopK(rule, p, 4); }), ErrorCode::kDomain);
}

TEST(ElectTopKTest, LotteryOnlyForSingleWinner) {
  const auto p = ThreeVoterProfile();
  EXPECT_EQ(ElectTopK(ScoringRule::Lottery(2), p, 1).members, (Members{2}));
  EXPECT_EQ(CodeOf([&] { ElectTopK(ScoringRule::Lottery(2), p, 2); }),
            ErrorCode::kConfig);
}

TEST(ElectThresholdTest, JudgeTrace) {
  const auto p = ThreeVoterProfile();
  const auto judge = ScoringRule::Of(RuleKind::kMajorityJudgment);
  const auto mid = ElectThreshold(judge, p, 10.0);
  EXPECT_EQ(mid.members, (Members{0, 1}));
  EXPECT_EQ(mid.score, 13.0);
  EXPECT_EQ(ElectThreshold(judge, p, 0.0).members, (Members{0}));
  EXPECT_EQ(ElectThreshold(judge, p, 1e9).members, (Members{0, 1, 2}));
  EXPECT_EQ(ElectThreshold(judge, p, INFINITY).members, (Members{0, 1, 2}));
}

TEST(ElectThresholdTest, StopsOnFirstMemberAboveThreshold) {
  const auto p = ThreeVoterProfile();
  const auto c = ElectThreshold(ScoringRule::Of(RuleKind::kMajorityJudgment), p, 6.9);
  EXPECT_EQ(c.members, (Members{0}));
}

TEST(ElectThresholdTest, EqualScoreKeepsGrowing) {
  // The loop continues while S <= threshold, so S == threshold adds more.
  const auto p = ThreeVoterProfile();
  const auto c = ElectThreshold(ScoringRule::Of(RuleKind::kMajorityJudgment), p, 7.0);
  EXPECT_EQ(c.members, (Members{0, 1}));
}

TEST(ElectThresholdTest, Errors) {
  const auto p = ThreeVoterProfile();
  EXPECT_EQ(CodeOf([&] {
              ElectThreshold(ScoringRule::Of(RuleKind::kBorda), p, -1.0);
            }),
            ErrorCode::kDomain);
  EXPECT_EQ(CodeOf([&] {
              ElectThreshold(ScoringRule::Of(RuleKind::kBorda), p, NAN);
            }),
            ErrorCode::kDomain);
  EXPECT_EQ(CodeOf([&] { ElectThreshold(ScoringRule::Lottery(0), p, 1.0); }),
            ErrorCode::kConfig);
}

TEST(ElectThresholdTest, LotteryNegativeUtilitiesStillSingleton) {
  const auto p = UtilityProfile::FromRows({{-0.5, -0.2, -0.9}, {0.1, 0.0, 0.3}});
  const auto c = ElectThreshold(ScoringRule::Lottery(0), p, 0.0);
  EXPECT_EQ(c.members, (Members{1}));
  EXPECT_EQ(c.score, -0.2);
}

TEST(ElectBruteForceTest, ThreeVoterExamples) {
  const auto p = ThreeVoterProfile();
  const auto ccr = ElectBruteForce(ScoringRule::Of(RuleKind::kChamberlinCourant), p, 2);
  EXPECT_EQ(ccr.members, (Members{0, 2}));
  EXPECT_EQ(ccr.score, 6.0);
  const auto judge = ElectBruteForce(ScoringRule::Of(RuleKind::kMajorityJudgment), p, 1);
  EXPECT_EQ(judge.members, (Members{0}));
  EXPECT_EQ(judge.score, 7.0);
  const auto all = ElectBruteForce(ScoringRule::Of(RuleKind::kBloc), p, 3);
  EXPECT_EQ(all.members, (Members{0, 1, 2}));
}

TEST(ElectBruteForceTest, LexicographicTieBreak) {
  const auto p = UtilityProfile::FromRows({{1, 1, 1, 1}});
  EXPECT_EQ(ElectBruteForce(ScoringRule::Of(RuleKind::kMajorityJudgment), p, 2).members,
            (Members{0, 1}));
}

TEST(ElectBruteForceTest, CapacityGuard) {
  std::vector<double> row(40, 0.0);
  const auto p = UtilityProfile(1, 40, row);
  EXPECT_EQ(CodeOf([&] {
              ElectBruteForce(ScoringRule::Of(RuleKind::kBorda), p, 20);
            }),
            ErrorCode::kCapacity);
  // binomial(40, 3) = 9880 is fine.
  EXPECT_EQ(ElectBruteForce(ScoringRule::Of(RuleKind::kBorda), p, 3).members.size(), 3u);
}

TEST(BoundedBinomialTest, Values) {
  EXPECT_EQ(BoundedBinomial(5, 2, 100), 10u);
  EXPECT_EQ(BoundedBinomial(8, 8, 100), 1u);
  EXPECT_EQ(BoundedBinomial(3, 5, 100), 0u);
  EXPECT_EQ(BoundedBinomial(60, 30, 1'000'000), 1'000'001u);
}

TEST(TieBreakTest, SeedRequiredIffSeeded) {
  EXPECT_NO_THROW(TieBreakPolicy::LowestIndex().Validate());
  EXPECT_NO_THROW(TieBreakPolicy::SeededRandom(3).Validate());
  TieBreakPolicy bad{TieBreakPolicy::Kind::kSeededRandom, std::nullopt};
  EXPECT_EQ(CodeOf([&] { bad.Validate(); }), ErrorCode::kConfig);
  TieBreakPolicy bad2{TieBreakPolicy::Kind::kLowestIndex, 4};
  EXPECT_EQ(CodeOf([&] { bad2.Validate(); }), ErrorCode::kConfig);
}

TEST(TieBreakTest, SeededArgMaxDeterministicAndVaried) {
  const std::vector<double> flat(8, 1.0);
  std::vector<bool> seen(8, false);
  for (std::uint64_t seed = 0; seed < 64; ++seed) {
    const TieBreaker a(TieBreakPolicy::SeededRandom(seed), 8);
    const TieBreaker b(TieBreakPolicy::SeededRandom(seed), 8);
    const std::size_t pick = ArgMax(flat, a);
    EXPECT_EQ(pick, ArgMax(flat, b));
    seen[pick] = true;
  }
  // Different seeds resolve the same tie differently.
  EXPECT_GT(std::count(seen.begin(), seen.end(), true), 1);
  EXPECT_EQ(ArgMax(flat, TieBreaker(TieBreakPolicy::LowestIndex(), 8)), 0u);
}

TEST(BallotFileTest, ParsesHeaderAndRows) {
  const auto file = ParseBallotFile(
      "# three voters\n"
      "rule: ccr\n"
      "n: 2\n"
      "tiebreak: seed=7\n"
      "\n"
      "3 2 1\n"
      "3, 2, 1   # trailing comment\n"
      "1\t2\t3\n");
  EXPECT_EQ(file.profile, ThreeVoterProfile());
  EXPECT_EQ(file.rule, "ccr");
  EXPECT_EQ(file.n, 2u);
  EXPECT_FALSE(file.threshold.has_value());
  EXPECT_EQ(file.tiebreak_seed, 7u);
}

TEST(BallotFileTest, ThresholdAndLotteryVoter) {
  const auto file = ParseBallotFile("threshold: inf\nlottery_voter: 1\n1 2\n3 4\n");
  EXPECT_TRUE(std::isinf(*file.threshold));
  EXPECT_EQ(file.lottery_voter, 1u);
}

TEST(BallotFileTest, ErrorsCarryLineNumbers) {
  auto message = [](const char* text) {
    try {
      ParseBallotFile(text, "b.txt");
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kParse);
      return std::string(e.what());
    }
    return std::string("no error");
  };
  EXPECT_EQ(message("1 2 3\n1 2\n").rfind("b.txt:2:", 0), 0u);
  EXPECT_EQ(message("# c\n1 x 3\n").rfind("b.txt:2:", 0), 0u);
  EXPECT_EQ(message("colour: red\n1 2\n").rfind("b.txt:1:", 0), 0u);
  EXPECT_EQ(message("1 2\nrule: ccr\n").rfind("b.txt:2:", 0), 0u);
  EXPECT_NE(message("# only comments\n").find("no ballots"), std::string::npos);
}

}  // namespace
}  // namespace crl::votecore
