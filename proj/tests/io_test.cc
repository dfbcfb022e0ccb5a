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

#include <filesystem>
#include <string>

#include "cmwu/errors.h"
#include "cmwu/game_io.h"
#include "cmwu/trajectory_io.h"
#include "gtest/gtest.h"

namespace cmwu {
namespace {

TEST(GameIoTest, RoundTrip) {
  const NormalFormGame game =
      GenerateGame({GeneratorKind::kRandomUniform, 3, 2, 4, ""});
  EXPECT_EQ(GameFromJson(GameToJson(game)), game);
}

TEST(GameIoTest, FileRoundTrip) {
  const NormalFormGame game =
      GenerateGame({GeneratorKind::kZeroSumTwoPlayer, 2, 3, 8, ""});
  const std::string path =
      (std::filesystem::temp_directory_path() / "cmwu_io_test_game.json")
          .string();
  WriteGameFile(path, game);
  EXPECT_EQ(ReadGameFile(path), game);
  std::filesystem::remove(path);
  EXPECT_THROW(ReadGameFile(path), InputError);
}

TEST(GameIoTest, MinimalDocumentAndIgnoredCeiling) {
  const NormalFormGame game = GameFromJson(
      R"({"players":2,"actions":[2,1],"payoffs":[[1,0],[0,0.5]],)"
      R"("payoff_ceiling":42})");
  EXPECT_EQ(game.action_counts(), std::vector<int>({2, 1}));
  EXPECT_DOUBLE_EQ(game.payoff_ceiling(), 1.0);
}

TEST(GameIoTest, RejectsMalformedDocuments) {
  EXPECT_THROW(GameFromJson("not json"), InputError);
  EXPECT_THROW(GameFromJson(R"({"actions":[2],"payoffs":[[1,0]]})"),
               InputError);
  EXPECT_THROW(
      GameFromJson(
          R"({"format":"other","players":1,"actions":[1],"payoffs":[[1]]})"),
      InputError);
  EXPECT_THROW(
      GameFromJson(
          R"({"version":2,"players":1,"actions":[1],"payoffs":[[1]]})"),
      InputError);
  EXPECT_THROW(
      GameFromJson(R"({"players":2,"actions":[1],"payoffs":[[1]]})"),
      InputError);
  EXPECT_THROW(
      GameFromJson(R"({"players":1,"actions":[2],"payoffs":[[1]]})"),
      ShapeError);
  EXPECT_THROW(
      GameFromJson(R"({"players":1,"actions":[2],"payoffs":[[1,-1]]})"),
      DomainError);
}

TEST(TrajectoryIoTest, CsvRoundTrip) {
  const NormalFormGame game =
      GenerateGame({GeneratorKind::kRandomUniform, 2, 3, 6, ""});
  DynamicsOptions options;
  options.eta = 2.0;
  const Trajectory traj = RunCmwuDynamics(game, 37, options);
  ASSERT_FALSE(traj.warnings.empty());
  const Trajectory back = TrajectoryFromCsv(TrajectoryToCsv(game, traj));
  EXPECT_EQ(back.kind, traj.kind);
  EXPECT_EQ(back.block_length, traj.block_length);
  EXPECT_EQ(back.etas, traj.etas);
  EXPECT_EQ(back.profiles, traj.profiles);
  EXPECT_EQ(back.z_snapshots, traj.z_snapshots);
  EXPECT_EQ(back.block_residuals, traj.block_residuals);
  EXPECT_EQ(back.warnings, traj.warnings);
}

TEST(TrajectoryIoTest, CsvLayout) {
  const NormalFormGame game =
      GenerateGame({GeneratorKind::kNamed, 2, 2, 0, "matching-pennies"});
  const std::string csv = TrajectoryToCsv(game, RunCmwuDynamics(game, 4));
  EXPECT_EQ(csv.rfind("# cmwu-trajectory v1\n# dynamics=cmwu\n", 0), 0u);
  EXPECT_NE(csv.find("\nrecord,round,anchor,player,action,value\n"),
            std::string::npos);
  EXPECT_NE(csv.find("\nresidual,2,1,,,0\n"), std::string::npos);
}

TEST(TrajectoryIoTest, RejectsMalformedCsv) {
  EXPECT_THROW(TrajectoryFromCsv(""), InputError);
  EXPECT_THROW(TrajectoryFromCsv("# cmwu-trajectory v2\n"), InputError);
  EXPECT_THROW(TrajectoryFromCsv("# cmwu-trajectory v1\n# dynamics=cmwu\n"
                                 "# actions=2\n# horizon=1\n"
                                 "# block_length=1\n# eta=0.1\n"
                                 "record,round,anchor,player,action,value\n"
                                 "x,0,1,0,0,oops\n"),
               InputError);
}

TEST(TrajectoryIoTest, JsonHasExpectedKeys) {
  const NormalFormGame game =
      GenerateGame({GeneratorKind::kRandomUniform, 2, 2, 1, ""});
  const std::string json = TrajectoryToJson(game, RunCmwuDynamics(game, 8));
  for (const char* key : {"\"format\"", "\"rounds\"", "\"anchors\"",
                          "\"block_length\"", "\"residual\""}) {
    EXPECT_NE(json.find(key), std::string::npos) << key;
  }
}

TEST(FormatDoubleTest, RoundTrips) {
  for (double v : {0.1, 1.0 / 3.0, 1e-300, 0.0, 123456.789}) {
    EXPECT_EQ(std::stod(FormatDouble(v)), v);
  }
}

}  // namespace
}  // namespace cmwu
