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

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <utility>

#include "cmwu/errors.h"

namespace cmwu {
namespace {

// Visits every pure profile in flat-index order. `factor(j, a)` gives the
// weight contributed by player j choosing action a; `visit(flat, idx, w)`
// receives the product of all factors. Prefix products are only recomputed
// from the lowest index that changed, so a full sweep costs O(N) on average.
template <typename Factor, typename Visit>
void ForEachWeightedProfile(const NormalFormGame& game, Factor&& factor,
                            Visit&& visit) {
  const int n = game.num_players();
  const auto& counts = game.action_counts();
  std::vector<int> idx(n, 0);
  std::vector<double> prefix(n + 1, 1.0);
  for (int j = 0; j < n; ++j) prefix[j + 1] = prefix[j] * factor(j, 0);
  const std::size_t total = game.num_profiles();
  for (std::size_t flat = 0; flat < total; ++flat) {
    visit(flat, std::span<const int>(idx), prefix[n]);
    int p = n - 1;
    while (p >= 0 && ++idx[p] == counts[p]) {
      idx[p] = 0;
      --p;
    }
    if (p < 0) break;
    for (int j = p; j < n; ++j) prefix[j + 1] = prefix[j] * factor(j, idx[j]);
  }
}

double UniformDouble(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::vector<double> UniformTensor(std::size_t size, std::mt19937_64& rng) {
  std::vector<double> tensor(size);
  for (double& entry : tensor) entry = UniformDouble(rng);
  return tensor;
}

}  // namespace

NormalFormGame::NormalFormGame(std::vector<int> action_counts,
                               std::vector<std::vector<double>> payoff_tensors)
    : action_counts_(std::move(action_counts)),
      payoff_tensors_(std::move(payoff_tensors)) {
  if (action_counts_.empty()) {
    throw ShapeError("a game needs at least one player");
  }
  if (payoff_tensors_.size() != action_counts_.size()) {
    throw ShapeError("expected one payoff tensor per player");
  }
  num_profiles_ = 1;
  for (int count : action_counts_) {
    if (count < 1) throw ShapeError("every player needs at least one action");
    if (num_profiles_ > kMaxProfiles / static_cast<std::size_t>(count)) {
      throw ShapeError("game exceeds the maximum of 10^7 pure profiles");
    }
    num_profiles_ *= static_cast<std::size_t>(count);
    max_actions_ = std::max(max_actions_, count);
  }
  strides_.assign(action_counts_.size(), 1);
  for (int j = static_cast<int>(action_counts_.size()) - 2; j >= 0; --j) {
    strides_[j] = strides_[j + 1] * static_cast<std::size_t>(action_counts_[j + 1]);
  }
  for (std::size_t i = 0; i < payoff_tensors_.size(); ++i) {
    const auto& tensor = payoff_tensors_[i];
    if (tensor.size() != num_profiles_) {
      std::ostringstream msg;
      msg << "payoff tensor of player " << i << " has " << tensor.size()
          << " entries, expected " << num_profiles_;
      throw ShapeError(msg.str());
    }
    for (double entry : tensor) {
      if (!std::isfinite(entry)) {
        throw DomainError("payoff entries must be finite");
      }
      if (entry < 0.0) {
        throw DomainError("payoff entries must be nonnegative");
      }
      payoff_ceiling_ = std::max(payoff_ceiling_, entry);
    }
  }
}

int NormalFormGame::num_actions(int player) const {
  return action_counts_.at(player);
}

std::span<const double> NormalFormGame::payoffs(int player) const {
  return payoff_tensors_.at(player);
}

std::size_t NormalFormGame::FlatIndex(std::span<const int> pure_profile) const {
  if (pure_profile.size() != action_counts_.size()) {
    throw ShapeError("pure profile has the wrong number of players");
  }
  std::size_t flat = 0;
  for (std::size_t j = 0; j < pure_profile.size(); ++j) {
    if (pure_profile[j] < 0 || pure_profile[j] >= action_counts_[j]) {
      throw ShapeError("pure profile action out of range");
    }
    flat += strides_[j] * static_cast<std::size_t>(pure_profile[j]);
  }
  return flat;
}

double NormalFormGame::Payoff(int player, std::span<const int> pure_profile) const {
  return payoffs(player)[FlatIndex(pure_profile)];
}

MixedStrategy::MixedStrategy(std::vector<double> probs)
    : probs_(std::move(probs)) {
  if (probs_.empty()) throw DomainError("mixed strategy must be nonempty");
  double total = 0.0;
  for (double p : probs_) {
    if (!std::isfinite(p) || p < 0.0) {
      throw DomainError("mixed strategy entries must be finite and >= 0");
    }
    total += p;
  }
  if (std::abs(total - 1.0) > kSimplexTolerance) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "mixed strategy sums to " << total << ", not 1";
    throw DomainError(msg.str());
  }
}

MixedStrategy MixedStrategy::Uniform(int num_actions) {
  if (num_actions < 1) throw ShapeError("uniform strategy needs >= 1 action");
  return MixedStrategy(std::vector<double>(num_actions, 1.0 / num_actions));
}

MixedStrategy MixedStrategy::Pure(int num_actions, int action) {
  if (action < 0 || action >= num_actions) {
    throw ShapeError("pure strategy action out of range");
  }
  std::vector<double> probs(num_actions, 0.0);
  probs[action] = 1.0;
  return MixedStrategy(std::move(probs));
}

bool MixedStrategy::IsFullyMixed() const {
  return std::all_of(probs_.begin(), probs_.end(),
                     [](double p) { return p > 0.0; });
}

StrategyProfile::StrategyProfile(std::vector<MixedStrategy> strategies)
    : strategies_(std::move(strategies)) {
  if (strategies_.empty()) throw ShapeError("profile needs >= 1 player");
}

StrategyProfile StrategyProfile::Uniform(const NormalFormGame& game) {
  std::vector<MixedStrategy> strategies;
  strategies.reserve(game.num_players());
  for (int count : game.action_counts()) {
    strategies.push_back(MixedStrategy::Uniform(count));
  }
  return StrategyProfile(std::move(strategies));
}

void StrategyProfile::Set(int player, MixedStrategy strategy) {
  if (strategy.size() != strategies_.at(player).size()) {
    throw ShapeError("replacement strategy has the wrong number of actions");
  }
  strategies_[player] = std::move(strategy);
}

void CheckProfileShape(const NormalFormGame& game,
                       const StrategyProfile& profile) {
  if (profile.num_players() != game.num_players()) {
    throw ShapeError("profile and game disagree on the number of players");
  }
  for (int j = 0; j < game.num_players(); ++j) {
    if (profile[j].size() != game.num_actions(j)) {
      std::ostringstream msg;
      msg << "strategy of player " << j << " has " << profile[j].size()
          << " actions, game has " << game.num_actions(j);
      throw ShapeError(msg.str());
    }
  }
}

double ExpectedUtility(const NormalFormGame& game, int player,
                       const StrategyProfile& profile) {
  CheckProfileShape(game, profile);
  const auto tensor = game.payoffs(player);
  double total = 0.0;
  ForEachWeightedProfile(
      game, [&](int j, int a) { return profile[j][a]; },
      [&](std::size_t flat, std::span<const int>, double weight) {
        total += tensor[flat] * weight;
      });
  return total;
}

PayoffVector ComputePayoffVector(const NormalFormGame& game, int player,
                                 std::span<const MixedStrategy> opponents) {
  const int n = game.num_players();
  if (player < 0 || player >= n) throw ShapeError("player index out of range");
  if (static_cast<int>(opponents.size()) != n - 1) {
    throw ShapeError("expected n - 1 opponent strategies");
  }
  auto opponent = [&](int j) -> const MixedStrategy& {
    return opponents[j < player ? j : j - 1];
  };
  for (int j = 0; j < n; ++j) {
    if (j != player && opponent(j).size() != game.num_actions(j)) {
      throw ShapeError("opponent strategy has the wrong number of actions");
    }
  }
  const auto tensor = game.payoffs(player);
  std::vector<double> values(game.num_actions(player), 0.0);
  ForEachWeightedProfile(
      game,
      [&](int j, int a) { return j == player ? 1.0 : opponent(j)[a]; },
      [&](std::size_t flat, std::span<const int> idx, double weight) {
        values[idx[player]] += tensor[flat] * weight;
      });
  // Rounding can push a convex combination a hair past the ceiling.
  const double ceiling = game.payoff_ceiling();
  for (double& value : values) value = std::clamp(value, 0.0, ceiling);
  return PayoffVector(std::move(values));
}

PayoffVector ComputePayoffVector(const NormalFormGame& game, int player,
                                 const StrategyProfile& profile) {
  CheckProfileShape(game, profile);
  std::vector<MixedStrategy> opponents;
  opponents.reserve(game.num_players() - 1);
  for (int j = 0; j < game.num_players(); ++j) {
    if (j != player) opponents.push_back(profile[j]);
  }
  return ComputePayoffVector(game, player, opponents);
}

double Dot(const PayoffVector& payoffs, const MixedStrategy& strategy) {
  if (payoffs.size() != strategy.size()) {
    throw ShapeError("payoff vector and strategy differ in length");
  }
  double total = 0.0;
  for (int a = 0; a < strategy.size(); ++a) total += payoffs[a] * strategy[a];
  return total;
}

NormalFormGame GenerateGame(const GeneratorSpec& spec) {
  switch (spec.kind) {
    case GeneratorKind::kRandomUniform: {
      if (spec.num_players < 1 || spec.num_actions < 1) {
        throw ConfigError("random game needs n >= 1 and m >= 1");
      }
      std::mt19937_64 rng(spec.seed);
      std::vector<int> counts(spec.num_players, spec.num_actions);
      std::size_t size = 1;
      for (int c : counts) {
        if (size > kMaxProfiles / static_cast<std::size_t>(c)) {
          throw ConfigError("random game exceeds the maximum size");
        }
        size *= static_cast<std::size_t>(c);
      }
      std::vector<std::vector<double>> tensors;
      for (int i = 0; i < spec.num_players; ++i) {
        tensors.push_back(UniformTensor(size, rng));
      }
      return NormalFormGame(std::move(counts), std::move(tensors));
    }
    case GeneratorKind::kZeroSumTwoPlayer: {
      if (spec.num_players != 2 || spec.num_actions < 1) {
        throw ConfigError("zero-sum generator needs n = 2 and m >= 1");
      }
      std::mt19937_64 rng(spec.seed);
      const std::size_t size =
          static_cast<std::size_t>(spec.num_actions) * spec.num_actions;
      std::vector<double> first = UniformTensor(size, rng);
      std::vector<double> second(size);
      for (std::size_t s = 0; s < size; ++s) second[s] = 1.0 - first[s];
      return NormalFormGame({spec.num_actions, spec.num_actions},
                            {std::move(first), std::move(second)});
    }
    case GeneratorKind::kNamed: {
      if (spec.name == "matching-pennies") {
        return NormalFormGame({2, 2}, {{1, 0, 0, 1}, {0, 1, 1, 0}});
      }
      if (spec.name == "rock-paper-scissors-01") {
        // Win 1, tie 1/2, loss 0; rows and columns ordered rock, paper,
        // scissors.
        std::vector<double> row = {0.5, 0.0, 1.0,  //
                                   1.0, 0.5, 0.0,  //
                                   0.0, 1.0, 0.5};
        std::vector<double> col(row.size());
        for (std::size_t s = 0; s < row.size(); ++s) col[s] = 1.0 - row[s];
        return NormalFormGame({3, 3}, {std::move(row), std::move(col)});
      }
      throw ConfigError("unknown named game: " + spec.name);
    }
  }
  throw ConfigError("unknown generator kind");
}

GeneratorSpec ParseGeneratorSpec(const std::string& text, std::uint64_t seed) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) {
    throw ConfigError("game generator must look like <kind>:<args>, got '" +
                      text + "'");
  }
  const std::string kind = text.substr(0, colon);
  const std::string args = text.substr(colon + 1);
  GeneratorSpec spec;
  spec.seed = seed;
  if (kind == "named") {
    spec.kind = GeneratorKind::kNamed;
    spec.name = args;
    if (args != "matching-pennies" && args != "rock-paper-scissors-01") {
      throw ConfigError("unknown named game '" + args + "'");
    }
    return spec;
  }
  if (kind == "random" || kind == "random-uniform") {
    spec.kind = GeneratorKind::kRandomUniform;
  } else if (kind == "zero-sum" || kind == "zero-sum-2p") {
    spec.kind = GeneratorKind::kZeroSumTwoPlayer;
  } else {
    throw ConfigError("unknown game generator kind '" + kind + "'");
  }
  std::istringstream stream(args);
  std::string item;
  while (std::getline(stream, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("generator argument must be key=value: '" + item + "'");
    }
    const std::string key = item.substr(0, eq);
    int value = 0;
    try {
      std::size_t used = 0;
      value = std::stoi(item.substr(eq + 1), &used);
      if (used != item.size() - eq - 1) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ConfigError("generator argument is not an integer: '" + item + "'");
    }
    if (key == "n") {
      spec.num_players = value;
    } else if (key == "m") {
      spec.num_actions = value;
    } else {
      throw ConfigError("unknown generator argument '" + key + "'");
    }
  }
  if (spec.kind == GeneratorKind::kZeroSumTwoPlayer && spec.num_players != 2) {
    throw ConfigError("zero-sum generator is two-player only");
  }
  if (spec.num_players < 1 || spec.num_actions < 1) {
    throw ConfigError("generator needs n >= 1 and m >= 1");
  }
  return spec;
}

}  // namespace cmwu
