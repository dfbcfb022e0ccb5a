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

#ifndef CMWU_GAME_H_
#define CMWU_GAME_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace cmwu {

// Largest number of pure profiles a game may have.
inline constexpr std::size_t kMaxProfiles = 10'000'000;

// Tolerance on the probability mass of a mixed strategy.
inline constexpr double kSimplexTolerance = 1e-12;

// A finite normal-form game with nonnegative payoffs.
//
// Each player's payoff tensor is stored densely in row-major order over pure
// profiles: player 0's action is the slowest-varying index and the last
// player's action the fastest. The payoff ceiling V is the largest entry over
// all tensors and is always recomputed from the data.
class NormalFormGame {
 public:
  // Throws ShapeError on inconsistent sizes and DomainError on negative or
  // non-finite entries.
  NormalFormGame(std::vector<int> action_counts,
                 std::vector<std::vector<double>> payoff_tensors);

  int num_players() const { return static_cast<int>(action_counts_.size()); }
  int num_actions(int player) const;
  const std::vector<int>& action_counts() const { return action_counts_; }
  // m = max_i |S_i|.
  int max_actions() const { return max_actions_; }
  double payoff_ceiling() const { return payoff_ceiling_; }
  std::size_t num_profiles() const { return num_profiles_; }

  // Flat tensor of `player`, indexed by FlatIndex().
  std::span<const double> payoffs(int player) const;

  std::size_t FlatIndex(std::span<const int> pure_profile) const;
  double Payoff(int player, std::span<const int> pure_profile) const;

  bool operator==(const NormalFormGame&) const = default;

 private:
  std::vector<int> action_counts_;
  std::vector<std::vector<double>> payoff_tensors_;
  std::vector<std::size_t> strides_;
  std::size_t num_profiles_ = 0;
  int max_actions_ = 0;
  double payoff_ceiling_ = 0.0;
};

// A point of the probability simplex over one player's actions.
class MixedStrategy {
 public:
  // Throws DomainError unless every entry is finite, nonnegative, and the
  // entries sum to one within kSimplexTolerance.
  explicit MixedStrategy(std::vector<double> probs);

  static MixedStrategy Uniform(int num_actions);
  static MixedStrategy Pure(int num_actions, int action);

  int size() const { return static_cast<int>(probs_.size()); }
  double operator[](int action) const { return probs_[action]; }
  std::span<const double> probs() const { return probs_; }
  bool IsFullyMixed() const;

  bool operator==(const MixedStrategy&) const = default;

 private:
  std::vector<double> probs_;
};

// One mixed strategy per player.
class StrategyProfile {
 public:
  explicit StrategyProfile(std::vector<MixedStrategy> strategies);

  static StrategyProfile Uniform(const NormalFormGame& game);

  int num_players() const { return static_cast<int>(strategies_.size()); }
  const MixedStrategy& operator[](int player) const {
    return strategies_[player];
  }
  std::span<const MixedStrategy> strategies() const { return strategies_; }
  void Set(int player, MixedStrategy strategy);

  bool operator==(const StrategyProfile&) const = default;

 private:
  std::vector<MixedStrategy> strategies_;
};

// Throws ShapeError if `profile` does not match the game's action counts.
void CheckProfileShape(const NormalFormGame& game,
                       const StrategyProfile& profile);

// v_i(x_{-i}): the expected payoff of each pure action of one player against
// the opponents' mixed strategies.
class PayoffVector {
 public:
  PayoffVector() = default;
  explicit PayoffVector(std::vector<double> values)
      : values_(std::move(values)) {}

  int size() const { return static_cast<int>(values_.size()); }
  double operator[](int action) const { return values_[action]; }
  std::span<const double> values() const { return values_; }

  bool operator==(const PayoffVector&) const = default;

 private:
  std::vector<double> values_;
};

// Expected payoff of `player` under the product distribution induced by
// `profile`, summed over every pure profile of the game.
double ExpectedUtility(const NormalFormGame& game, int player,
                       const StrategyProfile& profile);

// Payoff vector of `player` against `opponents`, which lists the strategies
// of all other players in player order (n - 1 entries).
PayoffVector ComputePayoffVector(const NormalFormGame& game, int player,
                                 std::span<const MixedStrategy> opponents);

// Same as above but reads the opponents from a full profile; the player's own
// entry is ignored.
PayoffVector ComputePayoffVector(const NormalFormGame& game, int player,
                                 const StrategyProfile& profile);

// Inner product <v, x>.
double Dot(const PayoffVector& payoffs, const MixedStrategy& strategy);

enum class GeneratorKind { kRandomUniform, kZeroSumTwoPlayer, kNamed };

struct GeneratorSpec {
  GeneratorKind kind = GeneratorKind::kRandomUniform;
  int num_players = 2;
  int num_actions = 2;
  std::uint64_t seed = 0;
  // Only for kNamed: "matching-pennies" or "rock-paper-scissors-01".
  std::string name;
};

// Builds a game from a generator description. Random kinds are a pure
// function of the seed; the draw sequence does not depend on the standard
// library's distribution implementations.
NormalFormGame GenerateGame(const GeneratorSpec& spec);

// Parses "named:<name>", "random:n=<n>,m=<m>" or "zero-sum:m=<m>". The seed
// is supplied separately. Throws ConfigError on anything else.
GeneratorSpec ParseGeneratorSpec(const std::string& text, std::uint64_t seed);

}  // namespace cmwu

#endif  // CMWU_GAME_H_
