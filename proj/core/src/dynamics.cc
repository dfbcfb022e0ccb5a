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

#include <bit>
#include <cmath>
#include <sstream>

#include "cmwu/errors.h"

namespace cmwu {

int DefaultBlockLength(int horizon) {
  if (horizon < 1) throw ConfigError("horizon must be >= 1");
  // ceil(log2 T) == bit width of T - 1.
  const int k = std::bit_width(static_cast<unsigned>(horizon - 1));
  return k < 1 ? 1 : k;
}

void PayoffOracle::Publish(int round, StrategyProfile broadcast) {
  if (round != round_ + 1) {
    std::ostringstream msg;
    msg << "round " << round << " published after round " << round_;
    throw ProtocolError(msg.str());
  }
  CheckProfileShape(*game_, broadcast);
  round_ = round;
  broadcast_ = std::move(broadcast);
  served_.assign(game_->num_players(), false);
}

PayoffVector PayoffOracle::Query(int player, int round) {
  if (!broadcast_ || round != round_) {
    std::ostringstream msg;
    msg << "payoffs for round " << round << " requested while round "
        << round_ << " is published";
    throw ProtocolError(msg.str());
  }
  if (player < 0 || player >= game_->num_players()) {
    throw ProtocolError("payoffs requested for an unknown player");
  }
  if (served_[player]) {
    throw ProtocolError("payoffs already delivered to this player");
  }
  served_[player] = true;
  log_.push_back({round, player});
  return ComputePayoffVector(*game_, player, *broadcast_);
}

CmwuAgent::CmwuAgent(int player, int num_actions, double eta,
                     int block_length)
    : player_(player),
      eta_(eta),
      block_length_(block_length),
      x_prev_(MixedStrategy::Uniform(num_actions)),
      z_(MixedStrategy::Uniform(num_actions)) {
  if (block_length < 1) throw ConfigError("block length k must be >= 1");
  if (!(eta >= 0.0) || !std::isfinite(eta)) {
    throw DomainError("step size must be finite and >= 0");
  }
}

MixedStrategy CmwuAgent::Broadcast(int round) {
  if (round != next_round_ || awaiting_payoffs_) {
    std::ostringstream msg;
    msg << "agent " << player_ << " asked to broadcast round " << round
        << ", expected round " << next_round_
        << (awaiting_payoffs_ ? " payoffs" : "");
    throw ProtocolError(msg.str());
  }
  if (round % block_length_ != 0) {
    if (!last_payoffs_) {
      throw ProtocolError("non-anchor round without cached payoffs");
    }
    x_prev_ = MwuStep(z_, *last_payoffs_, eta_);
  }
  awaiting_payoffs_ = true;
  return x_prev_;
}

void CmwuAgent::Observe(int round, PayoffOracle& oracle) {
  if (!awaiting_payoffs_ || round != next_round_) {
    throw ProtocolError("payoffs observed before broadcasting this round");
  }
  PayoffVector payoffs = oracle.Query(player_, round);
  if (round % block_length_ == 0) z_ = BtrlZUpdate(z_, payoffs, eta_);
  last_payoffs_ = std::move(payoffs);
  awaiting_payoffs_ = false;
  ++next_round_;
}

const char* DynamicsName(DynamicsKind kind) {
  switch (kind) {
    case DynamicsKind::kCmwu:
      return "cmwu";
    case DynamicsKind::kMwuBaseline:
      return "mwu";
    case DynamicsKind::kExactCmwu:
      return "exact-cmwu";
  }
  return "unknown";
}

int Trajectory::num_anchors() const {
  if (profiles.empty()) return 0;
  return (horizon() - 1) / block_length + 1;
}

std::vector<int> Trajectory::AnchorRounds() const {
  std::vector<int> rounds;
  for (int t = 0; t < horizon(); t += block_length) rounds.push_back(t);
  return rounds;
}

std::vector<StrategyProfile> Trajectory::AnchorProfiles() const {
  std::vector<StrategyProfile> anchors;
  for (int t : AnchorRounds()) anchors.push_back(profiles[t]);
  return anchors;
}

namespace {

void FillBlockResiduals(Trajectory& trajectory) {
  const auto rounds = trajectory.AnchorRounds();
  for (std::size_t tau = 1; tau < rounds.size(); ++tau) {
    trajectory.block_residuals.push_back(ProfileDistance(
        trajectory.profiles[rounds[tau]], trajectory.z_snapshots[tau]));
  }
}

void WarnIfNotContraction(const NormalFormGame& game, Trajectory& trajectory) {
  const double factor = ContractionFactor(game, trajectory.etas);
  if (factor >= 1.0) {
    std::ostringstream msg;
    msg << "max eta * V * (n - 1) = " << factor
        << " >= 1: the profile map is not guaranteed to contract";
    trajectory.warnings.push_back(msg.str());
  }
}

}  // namespace

std::vector<double> ResolveStepSizes(const NormalFormGame& game,
                                     const DynamicsOptions& options) {
  std::vector<double> etas;
  if (options.etas) {
    etas = *options.etas;
  } else {
    etas = CommonStepSizes(game, options.eta.value_or(DefaultStepSize(game)));
  }
  CheckStepSizes(game, etas);
  return etas;
}

Trajectory RunCmwuDynamics(const NormalFormGame& game, int horizon,
                           const DynamicsOptions& options) {
  if (horizon < 1) throw ConfigError("horizon must be >= 1");
  Trajectory trajectory;
  trajectory.kind = DynamicsKind::kCmwu;
  trajectory.etas = ResolveStepSizes(game, options);
  trajectory.block_length =
      options.block_length.value_or(DefaultBlockLength(horizon));
  if (trajectory.block_length < 1) {
    throw ConfigError("block length k must be >= 1");
  }
  WarnIfNotContraction(game, trajectory);

  const int n = game.num_players();
  std::vector<CmwuAgent> agents;
  agents.reserve(n);
  for (int i = 0; i < n; ++i) {
    agents.emplace_back(i, game.num_actions(i), trajectory.etas[i],
                        trajectory.block_length);
  }
  PayoffOracle oracle(game);
  trajectory.profiles.reserve(horizon);
  for (int t = 0; t < horizon; ++t) {
    std::vector<MixedStrategy> broadcast;
    broadcast.reserve(n);
    for (auto& agent : agents) broadcast.push_back(agent.Broadcast(t));
    StrategyProfile profile(std::move(broadcast));
    oracle.Publish(t, profile);
    for (auto& agent : agents) agent.Observe(t, oracle);
    trajectory.profiles.push_back(std::move(profile));
    if (t % trajectory.block_length == 0) {
      std::vector<MixedStrategy> leaders;
      leaders.reserve(n);
      for (const auto& agent : agents) leaders.push_back(agent.leader());
      trajectory.z_snapshots.emplace_back(std::move(leaders));
    }
  }
  trajectory.oracle_log = oracle.access_log();
  FillBlockResiduals(trajectory);
  return trajectory;
}

Trajectory RunMwuBaseline(const NormalFormGame& game, int horizon,
                          std::span<const double> etas) {
  if (horizon < 1) throw ConfigError("horizon must be >= 1");
  CheckStepSizes(game, etas);
  Trajectory trajectory;
  trajectory.kind = DynamicsKind::kMwuBaseline;
  trajectory.block_length = 1;
  trajectory.etas.assign(etas.begin(), etas.end());

  const int n = game.num_players();
  PayoffOracle oracle(game);
  StrategyProfile current = StrategyProfile::Uniform(game);
  trajectory.profiles.reserve(horizon);
  for (int t = 0; t < horizon; ++t) {
    oracle.Publish(t, current);
    std::vector<MixedStrategy> next;
    next.reserve(n);
    for (int i = 0; i < n; ++i) {
      next.push_back(MwuStep(current[i], oracle.Query(i, t), etas[i]));
    }
    trajectory.profiles.push_back(std::move(current));
    current = StrategyProfile(std::move(next));
    trajectory.z_snapshots.push_back(current);
  }
  trajectory.oracle_log = oracle.access_log();
  FillBlockResiduals(trajectory);
  return trajectory;
}

Trajectory RunExactCmwu(const NormalFormGame& game, int horizon,
                        std::span<const double> etas,
                        const FixedPointSettings& settings) {
  if (horizon < 1) throw ConfigError("horizon must be >= 1");
  CheckStepSizes(game, etas);
  Trajectory trajectory;
  trajectory.kind = DynamicsKind::kExactCmwu;
  trajectory.block_length = 1;
  trajectory.etas.assign(etas.begin(), etas.end());
  WarnIfNotContraction(game, trajectory);

  StrategyProfile previous = StrategyProfile::Uniform(game);
  trajectory.profiles.reserve(horizon);
  for (int t = 0; t < horizon; ++t) {
    FixedPointResult step = SolveCmwuFixedPoint(previous, game, etas, settings);
    trajectory.solver_iterations.push_back(step.iterations);
    trajectory.solver_residuals.push_back(step.final_residual);
    if (!step.converged && trajectory.solver_converged) {
      trajectory.solver_converged = false;
      std::ostringstream msg;
      msg << "fixed-point solve did not converge at round " << t
          << " (residual " << step.final_residual << ")";
      trajectory.warnings.push_back(msg.str());
    }
    trajectory.profiles.push_back(step.profile);
    trajectory.z_snapshots.push_back(step.profile);
    previous = std::move(step.profile);
  }
  FillBlockResiduals(trajectory);
  return trajectory;
}

}  // namespace cmwu
