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

#include "cmwu/dynamics.h"

#include <vector>

#include "cmwu/errors.h"
#include "cmwu/learning_rules.h"
#include "gtest/gtest.h"
#include "oracles.h"

namespace cmwu {
namespace {

NormalFormGame MatchingPennies() {
  return GenerateGame({GeneratorKind::kNamed, 2, 2, 0, "matching-pennies"});
}

NormalFormGame Random(int n, int m, std::uint64_t seed) {
  return GenerateGame({GeneratorKind::kRandomUniform, n, m, seed, ""});
}

TEST(BlockLengthTest, BaseTwoCeiling) {
  EXPECT_EQ(DefaultBlockLength(1), 1);
  EXPECT_EQ(DefaultBlockLength(2), 1);
  EXPECT_EQ(DefaultBlockLength(3), 2);
  EXPECT_EQ(DefaultBlockLength(1024), 10);
  EXPECT_EQ(DefaultBlockLength(1025), 11);
  EXPECT_EQ(DefaultBlockLength(4096), 12);
  EXPECT_THROW(DefaultBlockLength(0), ConfigError);
}

TEST(OracleTest, EnforcesRoundOrderAndSingleQuery) {
  const NormalFormGame game = MatchingPennies();
  PayoffOracle oracle(game);
  EXPECT_THROW(oracle.Query(0, 0), ProtocolError);
  oracle.Publish(0, StrategyProfile::Uniform(game));
  EXPECT_THROW(oracle.Query(0, 1), ProtocolError);
  EXPECT_NO_THROW(oracle.Query(0, 0));
  EXPECT_THROW(oracle.Query(0, 0), ProtocolError);
  EXPECT_THROW(oracle.Publish(2, StrategyProfile::Uniform(game)),
               ProtocolError);
  ASSERT_EQ(oracle.access_log().size(), 1u);
  EXPECT_EQ(oracle.access_log()[0].round, 0);
  EXPECT_EQ(oracle.access_log()[0].player, 0);
}

TEST(AgentTest, AnchorRoundInCornerGame) {
  const NormalFormGame game({2, 2}, {{1, 0, 0, 0}, {1, 0, 0, 0}});
  PayoffOracle oracle(game);
  CmwuAgent first(0, 2, 0.25, 4);
  CmwuAgent second(1, 2, 0.25, 4);
  const StrategyProfile x0({first.Broadcast(0), second.Broadcast(0)});
  EXPECT_EQ(x0, StrategyProfile::Uniform(game));
  oracle.Publish(0, x0);
  first.Observe(0, oracle);
  second.Observe(0, oracle);
  EXPECT_NEAR(first.leader()[0], 0.531209, 1e-6);
  EXPECT_NEAR(first.leader()[1], 0.468791, 1e-6);
}

TEST(AgentTest, NonAnchorWithConstantPayoffsPlaysLeader) {
  const NormalFormGame game = MatchingPennies();
  PayoffOracle oracle(game);
  CmwuAgent agents[2] = {{0, 2, 0.25, 4}, {1, 2, 0.25, 4}};
  for (int t = 0; t < 2; ++t) {
    const StrategyProfile x({agents[0].Broadcast(t), agents[1].Broadcast(t)});
    if (t == 1) {
      EXPECT_EQ(x[0], agents[0].leader());
      EXPECT_EQ(x[0], MixedStrategy::Uniform(2));
    }
    oracle.Publish(t, x);
    for (auto& agent : agents) agent.Observe(t, oracle);
  }
}

TEST(AgentTest, OutOfOrderRoundsRejected) {
  const NormalFormGame game = MatchingPennies();
  PayoffOracle oracle(game);
  CmwuAgent agent(0, 2, 0.25, 2);
  EXPECT_THROW(agent.Broadcast(1), ProtocolError);
  agent.Broadcast(0);
  EXPECT_THROW(agent.Broadcast(0), ProtocolError);
  EXPECT_THROW(agent.Observe(1, oracle), ProtocolError);
}

TEST(RunDynamicsTest, AnchorLayout) {
  const Trajectory traj = RunCmwuDynamics(Random(2, 3, 4), 1024);
  EXPECT_EQ(traj.block_length, 10);
  EXPECT_EQ(traj.num_anchors(), 103);
  const std::vector<int> anchors = traj.AnchorRounds();
  EXPECT_EQ(anchors.front(), 0);
  EXPECT_EQ(anchors[1], 10);
  EXPECT_EQ(anchors.back(), 1020);
  EXPECT_EQ(traj.z_snapshots.size(), anchors.size());
  EXPECT_EQ(traj.block_residuals.size(), anchors.size() - 1);
}

TEST(RunDynamicsTest, MatchingPenniesStaysUniform) {
  const NormalFormGame game = MatchingPennies();
  const Trajectory traj = RunCmwuDynamics(game, 200);
  for (const auto& x : traj.profiles) {
    EXPECT_EQ(x, StrategyProfile::Uniform(game));
  }
}

TEST(RunDynamicsTest, MatchesReferenceProtocol) {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const NormalFormGame game = Random(3, 3, seed);
    const double eta = DefaultStepSize(game);
    const Trajectory traj = RunCmwuDynamics(game, 60);
    std::vector<oracle::Profile> leaders;
    const auto expected = oracle::ClairvoyantDynamics(
        game, 60, eta, traj.block_length, &leaders);
    for (int t = 0; t < 60; ++t) {
      EXPECT_LE(oracle::Distance(oracle::ToProfile(traj.profiles[t]),
                                 expected[t]),
                1e-13)
          << "round " << t;
    }
    ASSERT_EQ(leaders.size(), traj.z_snapshots.size());
    for (std::size_t tau = 0; tau < leaders.size(); ++tau) {
      EXPECT_LE(oracle::Distance(oracle::ToProfile(traj.z_snapshots[tau]),
                                 leaders[tau]),
                1e-13);
    }
  }
}

TEST(RunDynamicsTest, AnchorReplayAndUncoupledAccess) {
  const NormalFormGame game = Random(3, 4, 6);
  const Trajectory traj = RunCmwuDynamics(game, 300);
  for (int t : traj.AnchorRounds()) {
    if (t > 0) {
      EXPECT_EQ(traj.profiles[t], traj.profiles[t - 1]);
    }
  }
  ASSERT_EQ(traj.oracle_log.size(), 300u * 3u);
  for (std::size_t e = 0; e < traj.oracle_log.size(); ++e) {
    EXPECT_EQ(traj.oracle_log[e].round, static_cast<int>(e / 3));
    EXPECT_EQ(traj.oracle_log[e].player, static_cast<int>(e % 3));
  }
}

TEST(RunDynamicsTest, BlockResidualSeed3) {
  const NormalFormGame game = Random(2, 10, 3);
  const Trajectory traj = RunCmwuDynamics(game, 4096);
  ASSERT_EQ(traj.block_length, 12);
  for (double r : traj.block_residuals) EXPECT_LE(r, 8.0 / 4096.0);
}

TEST(RunDynamicsTest, IntraBlockDecay) {
  const NormalFormGame game = Random(2, 5, 8);
  const Trajectory traj = RunCmwuDynamics(game, 1024);
  const int k = traj.block_length;
  for (int start = 0; start + k < traj.horizon(); start += k) {
    // Offsets 1 and 2 of a block are the first two implicit iterates.
    for (int m = start + 3; m < start + k; ++m) {
      const double later =
          ProfileDistance(traj.profiles[m], traj.profiles[m - 1]);
      const double earlier =
          ProfileDistance(traj.profiles[m - 1], traj.profiles[m - 2]);
      EXPECT_LE(later, 0.5 * earlier + 1e-15) << "round " << m;
    }
  }
}

TEST(RunDynamicsTest, OverridesAndWarnings) {
  const NormalFormGame game = Random(2, 3, 1);
  DynamicsOptions options;
  options.block_length = 3;
  options.eta = 0.05;
  const Trajectory traj = RunCmwuDynamics(game, 10, options);
  EXPECT_EQ(traj.block_length, 3);
  EXPECT_EQ(traj.etas, std::vector<double>({0.05, 0.05}));
  EXPECT_TRUE(traj.warnings.empty());

  options.eta = 5.0 / game.payoff_ceiling();
  EXPECT_FALSE(RunCmwuDynamics(game, 10, options).warnings.empty());
  options.block_length = 0;
  EXPECT_THROW(RunCmwuDynamics(game, 10, options), ConfigError);
  EXPECT_THROW(RunCmwuDynamics(game, 0), ConfigError);
}

TEST(RunDynamicsTest, Deterministic) {
  const NormalFormGame game = Random(3, 3, 12);
  const Trajectory a = RunCmwuDynamics(game, 500);
  const Trajectory b = RunCmwuDynamics(game, 500);
  EXPECT_EQ(a.profiles, b.profiles);
  EXPECT_EQ(a.z_snapshots, b.z_snapshots);
  EXPECT_EQ(a.block_residuals, b.block_residuals);
}

TEST(MwuBaselineTest, MatchesReference) {
  const NormalFormGame game = Random(2, 2, 5);
  const Trajectory traj =
      RunMwuBaseline(game, 3, CommonStepSizes(game, 0.1));
  const auto expected = oracle::MwuTrajectory(game, 3, 0.1);
  ASSERT_EQ(traj.horizon(), 3);
  for (int t = 0; t < 3; ++t) {
    EXPECT_LE(oracle::Distance(oracle::ToProfile(traj.profiles[t]),
                               expected[t]),
              1e-15);
  }
  EXPECT_EQ(traj.block_length, 1);
  EXPECT_EQ(traj.num_anchors(), 3);
}

TEST(MwuBaselineTest, UniformForeverCases) {
  const NormalFormGame mp = MatchingPennies();
  for (const auto& x :
       RunMwuBaseline(mp, 50, CommonStepSizes(mp, 0.7)).profiles) {
    EXPECT_EQ(x, StrategyProfile::Uniform(mp));
  }
  const NormalFormGame game = Random(3, 4, 2);
  for (const auto& x :
       RunMwuBaseline(game, 50, CommonStepSizes(game, 0.0)).profiles) {
    EXPECT_EQ(x, StrategyProfile::Uniform(game));
  }
}

TEST(ExactCmwuTest, EachProfileIsTheImplicitUpdateOfThePrevious) {
  const NormalFormGame game = Random(2, 4, 7);
  const auto etas = CommonStepSizes(game, 0.2);
  const Trajectory traj = RunExactCmwu(game, 20, etas);
  EXPECT_TRUE(traj.solver_converged);
  EXPECT_EQ(traj.kind, DynamicsKind::kExactCmwu);
  oracle::Profile previous = oracle::ToProfile(StrategyProfile::Uniform(game));
  for (int t = 0; t < 20; ++t) {
    const oracle::Profile expected =
        oracle::ClairvoyantStep(game, previous, 0.2, 1e-15);
    EXPECT_LE(oracle::Distance(oracle::ToProfile(traj.profiles[t]), expected),
              1e-9);
    previous = oracle::ToProfile(traj.profiles[t]);
  }
}

}  // namespace
}  // namespace cmwu
