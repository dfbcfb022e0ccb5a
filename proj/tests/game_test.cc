// Copyright 2026 The CMWU Authors
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

#include "cmwu/game.h"

#include <random>
#include <vector>

#include "cmwu/errors.h"
#include "gtest/gtest.h"
#include "oracles.h"

namespace cmwu {
namespace {

NormalFormGame MatchingPennies() {
  return GenerateGame({GeneratorKind::kNamed, 2, 2, 0, "matching-pennies"});
}

NormalFormGame CornerGame() {
  return NormalFormGame({2, 2}, {{1, 0, 0, 0}, {1, 0, 0, 0}});
}

TEST(GameTest, RejectsBadTensors) {
  EXPECT_THROW(NormalFormGame({2, 2}, {{1, 0, 0}, {0, 0, 0, 0}}), ShapeError);
  EXPECT_THROW(NormalFormGame({2, 2}, {{1, 0, 0, 0}}), ShapeError);
  EXPECT_THROW(NormalFormGame({2, 0}, {{}, {}}), ShapeError);
  EXPECT_THROW(NormalFormGame({2, 2}, {{1, 0, -1, 0}, {0, 0, 0, 0}}),
               DomainError);
  EXPECT_THROW(NormalFormGame({2, 2}, {{1, 0, NAN, 0}, {0, 0, 0, 0}}),
               DomainError);
  EXPECT_THROW(NormalFormGame({5000, 5000}, {{}, {}}), ShapeError);
}

TEST(GameTest, PayoffCeilingIsLargestEntry) {
  NormalFormGame game({2, 3}, {{0, 0.5, 0.1, 0, 0, 0}, {2.5, 0, 0, 0, 0, 1}});
  EXPECT_DOUBLE_EQ(game.payoff_ceiling(), 2.5);
  EXPECT_EQ(game.max_actions(), 3);
  EXPECT_EQ(game.num_profiles(), 6u);
  const std::vector<int> s = {1, 2};
  EXPECT_EQ(game.FlatIndex(s), 5u);
  EXPECT_DOUBLE_EQ(game.Payoff(1, s), 1.0);
}

TEST(MixedStrategyTest, Validation) {
  EXPECT_THROW(MixedStrategy({0.5, 0.6}), DomainError);
  EXPECT_THROW(MixedStrategy({1.5, -0.5}), DomainError);
  EXPECT_THROW(MixedStrategy(std::vector<double>{}), DomainError);
  EXPECT_NO_THROW(MixedStrategy({0.25, 0.75}));
  EXPECT_TRUE(MixedStrategy::Uniform(3).IsFullyMixed());
  EXPECT_FALSE(MixedStrategy::Pure(3, 1).IsFullyMixed());
}

TEST(ExpectedUtilityTest, MatchingPenniesUniform) {
  const NormalFormGame game = MatchingPennies();
  const StrategyProfile x = StrategyProfile::Uniform(game);
  EXPECT_DOUBLE_EQ(ExpectedUtility(game, 0, x), 0.5);
  EXPECT_DOUBLE_EQ(ExpectedUtility(game, 1, x), 0.5);
}

TEST(ExpectedUtilityTest, PureProfileReadsTensorEntry) {
  const NormalFormGame game =
      GenerateGame({GeneratorKind::kRandomUniform, 3, 3, 11, ""});
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      for (int c = 0; c < 3; ++c) {
        const StrategyProfile x({MixedStrategy::Pure(3, a),
                                 MixedStrategy::Pure(3, b),
                                 MixedStrategy::Pure(3, c)});
        const std::vector<int> s = {a, b, c};
        for (int i = 0; i < 3; ++i) {
          EXPECT_EQ(ExpectedUtility(game, i, x), game.Payoff(i, s));
        }
      }
    }
  }
}

TEST(ExpectedUtilityTest, ShapeMismatch) {
  const NormalFormGame game = MatchingPennies();
  const StrategyProfile x({MixedStrategy::Uniform(3), MixedStrategy::Uniform(2)});
  EXPECT_THROW(ExpectedUtility(game, 0, x), ShapeError);
  EXPECT_THROW(ComputePayoffVector(game, 0, x), ShapeError);
}

TEST(ExpectedUtilityTest, ThreePlayerMatchesEnumerator) {
  const NormalFormGame game =
      GenerateGame({GeneratorKind::kRandomUniform, 3, 2, 42, ""});
  std::mt19937_64 rng(1);
  const StrategyProfile x = oracle::RandomProfile(game, rng);
  for (int i = 0; i < 3; ++i) {
    EXPECT_NEAR(ExpectedUtility(game, i, x),
                oracle::Utility(game, i, oracle::ToProfile(x)), 1e-12);
  }
}

TEST(PayoffVectorTest, Examples) {
  const StrategyProfile mp_uniform = StrategyProfile::Uniform(MatchingPennies());
  const PayoffVector mp = ComputePayoffVector(MatchingPennies(), 0, mp_uniform);
  EXPECT_DOUBLE_EQ(mp[0], 0.5);
  EXPECT_DOUBLE_EQ(mp[1], 0.5);

  const NormalFormGame corner = CornerGame();
  const PayoffVector v =
      ComputePayoffVector(corner, 0, StrategyProfile::Uniform(corner));
  EXPECT_DOUBLE_EQ(v[0], 0.5);
  EXPECT_DOUBLE_EQ(v[1], 0.0);
}

TEST(PayoffVectorTest, PureOpponentsGiveTensorSlice) {
  const NormalFormGame game =
      GenerateGame({GeneratorKind::kRandomUniform, 3, 4, 9, ""});
  const std::vector<MixedStrategy> opponents = {MixedStrategy::Pure(4, 2),
                                                MixedStrategy::Pure(4, 3)};
  const PayoffVector v = ComputePayoffVector(game, 0, opponents);
  for (int a = 0; a < 4; ++a) {
    const std::vector<int> s = {a, 2, 3};
    EXPECT_EQ(v[a], game.Payoff(0, s));
  }
}

TEST(PayoffVectorTest, DotGivesExpectedUtility) {
  const NormalFormGame game =
      GenerateGame({GeneratorKind::kRandomUniform, 4, 3, 5, ""});
  std::mt19937_64 rng(3);
  for (int rep = 0; rep < 20; ++rep) {
    const StrategyProfile x = oracle::RandomProfile(game, rng);
    for (int i = 0; i < 4; ++i) {
      EXPECT_NEAR(Dot(ComputePayoffVector(game, i, x), x[i]),
                  ExpectedUtility(game, i, x), 1e-12);
    }
  }
}

TEST(GeneratorTest, MatchingPenniesTensors) {
  const NormalFormGame game = MatchingPennies();
  EXPECT_EQ(game, NormalFormGame({2, 2}, {{1, 0, 0, 1}, {0, 1, 1, 0}}));
  EXPECT_DOUBLE_EQ(game.payoff_ceiling(), 1.0);
}

TEST(GeneratorTest, RandomIsDeterministic) {
  const GeneratorSpec spec{GeneratorKind::kRandomUniform, 2, 3, 7, ""};
  const NormalFormGame a = GenerateGame(spec);
  const NormalFormGame b = GenerateGame(spec);
  EXPECT_EQ(a, b);
  GeneratorSpec other = spec;
  other.seed = 8;
  EXPECT_NE(a, GenerateGame(other));
}

TEST(GeneratorTest, RandomGameFrozenDraws) {
  // Pinned so that a change in the draw sequence is caught.
  const NormalFormGame game =
      GenerateGame({GeneratorKind::kRandomUniform, 2, 2, 1, ""});
  const auto p0 = game.payoffs(0);
  for (double v : p0) {
    EXPECT_GE(v, 0.0);
    EXPECT_LT(v, 1.0);
  }
  EXPECT_EQ(p0[0], 0x1.122deafddb434p-3);
  EXPECT_EQ(p0[3], 0x1.5876015e4d7p-6);
  EXPECT_EQ(game.payoffs(1)[1], 0x1.d29d85a57326dp-1);
}

TEST(GeneratorTest, ZeroSumComplements) {
  for (std::uint64_t seed : {0u, 1u, 99u}) {
    const NormalFormGame game =
        GenerateGame({GeneratorKind::kZeroSumTwoPlayer, 2, 4, seed, ""});
    for (std::size_t p = 0; p < game.num_profiles(); ++p) {
      EXPECT_DOUBLE_EQ(game.payoffs(0)[p] + game.payoffs(1)[p], 1.0);
    }
  }
}

TEST(GeneratorTest, ParseSpecs) {
  EXPECT_EQ(ParseGeneratorSpec("named:matching-pennies", 0).kind,
            GeneratorKind::kNamed);
  const GeneratorSpec random = ParseGeneratorSpec("random:n=3,m=5", 4);
  EXPECT_EQ(random.kind, GeneratorKind::kRandomUniform);
  EXPECT_EQ(random.num_players, 3);
  EXPECT_EQ(random.num_actions, 5);
  EXPECT_EQ(random.seed, 4u);
  EXPECT_EQ(ParseGeneratorSpec("zero-sum:m=6", 0).num_actions, 6);
  EXPECT_THROW(ParseGeneratorSpec("poker", 0), ConfigError);
  EXPECT_THROW(ParseGeneratorSpec("named:chess", 0), ConfigError);
  EXPECT_THROW(ParseGeneratorSpec("random:n=x", 0), ConfigError);
}

}  // namespace
}  // namespace cmwu
