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

#include "cmwu/metrics.h"

#include <algorithm>
#include <cmath>

#include "cmwu/errors.h"

namespace cmwu {

const char* SubsequenceName(Subsequence subsequence) {
  return subsequence == Subsequence::kFull ? "full" : "anchors";
}

RegretEntry SequenceRegret(std::span<const PayoffVector> payoffs,
                           std::span<const MixedStrategy> plays) {
  if (payoffs.empty()) throw InputError("regret of an empty sequence");
  if (payoffs.size() != plays.size()) {
    throw ShapeError("payoff and play sequences differ in length");
  }
  const int m = payoffs.front().size();
  std::vector<double> cumulative(m, 0.0);
  double realized = 0.0;
  for (std::size_t t = 0; t < payoffs.size(); ++t) {
    if (payoffs[t].size() != m) {
      throw ShapeError("payoff vectors differ in length");
    }
    for (int a = 0; a < m; ++a) cumulative[a] += payoffs[t][a];
    realized += Dot(payoffs[t], plays[t]);
  }
  RegretEntry entry;
  for (int a = 1; a < m; ++a) {
    if (cumulative[a] > cumulative[entry.best_response_action]) {
      entry.best_response_action = a;
    }
  }
  entry.regret = cumulative[entry.best_response_action] - realized;
  return entry;
}

RegretEntry Regret(const NormalFormGame& game,
                   std::span<const StrategyProfile> profiles, int player) {
  if (profiles.empty()) throw InputError("regret of an empty sequence");
  std::vector<PayoffVector> payoffs;
  std::vector<MixedStrategy> plays;
  payoffs.reserve(profiles.size());
  plays.reserve(profiles.size());
  for (const auto& profile : profiles) {
    payoffs.push_back(ComputePayoffVector(game, player, profile));
    plays.push_back(profile[player]);
  }
  return SequenceRegret(payoffs, plays);
}

RegretReport RegretForAllAgents(const NormalFormGame& game,
                                std::span<const StrategyProfile> profiles,
                                Subsequence subsequence) {
  RegretReport report;
  report.horizon_used = static_cast<int>(profiles.size());
  report.subsequence = subsequence;
  for (int i = 0; i < game.num_players(); ++i) {
    const RegretEntry entry = Regret(game, profiles, i);
    report.per_agent_regret.push_back(entry.regret);
    report.best_response_action.push_back(entry.best_response_action);
  }
  return report;
}

double AnchorRegret(const NormalFormGame& game, const Trajectory& trajectory,
                    int player) {
  if (trajectory.profiles.empty() || trajectory.block_length < 1) {
    throw ProtocolError("trajectory has no anchor rounds");
  }
  const auto anchors = trajectory.AnchorProfiles();
  return Regret(game, anchors, player).regret;
}

double LeaderRegret(const NormalFormGame& game, const Trajectory& trajectory,
                    int player) {
  const auto anchors = trajectory.AnchorProfiles();
  if (anchors.empty() ||
      trajectory.z_snapshots.size() != anchors.size()) {
    throw ProtocolError("trajectory lacks one leader snapshot per anchor");
  }
  std::vector<PayoffVector> payoffs;
  std::vector<MixedStrategy> leaders;
  for (std::size_t tau = 0; tau < anchors.size(); ++tau) {
    payoffs.push_back(ComputePayoffVector(game, player, anchors[tau]));
    leaders.push_back(trajectory.z_snapshots[tau][player]);
  }
  return SequenceRegret(payoffs, leaders).regret;
}

CceGapReport CceGap(const NormalFormGame& game,
                    std::span<const StrategyProfile> profiles,
                    std::span<const double> weights) {
  if (profiles.empty()) throw InputError("CCE gap of an empty mixture");
  std::vector<double> w;
  if (weights.empty()) {
    w.assign(profiles.size(), 1.0 / static_cast<double>(profiles.size()));
  } else {
    if (weights.size() != profiles.size()) {
      throw InputError("one weight per profile is required");
    }
    double total = 0.0;
    for (double weight : weights) {
      if (!std::isfinite(weight) || weight < 0.0) {
        throw InputError("mixture weights must be finite and >= 0");
      }
      total += weight;
    }
    if (std::abs(total - 1.0) > 1e-9) {
      throw InputError("mixture weights must sum to 1");
    }
    w.assign(weights.begin(), weights.end());
  }

  CceGapReport report;
  report.num_profiles_averaged = static_cast<int>(profiles.size());
  for (int i = 0; i < game.num_players(); ++i) {
    std::vector<double> deviation(game.num_actions(i), 0.0);
    double on_path = 0.0;
    for (std::size_t t = 0; t < profiles.size(); ++t) {
      const PayoffVector v = ComputePayoffVector(game, i, profiles[t]);
      for (int a = 0; a < v.size(); ++a) deviation[a] += w[t] * v[a];
      on_path += w[t] * ExpectedUtility(game, i, profiles[t]);
    }
    const double raw =
        *std::max_element(deviation.begin(), deviation.end()) - on_path;
    report.per_agent_raw.push_back(raw);
    report.per_agent_gap.push_back(std::max(raw, 0.0));
  }
  report.overall_gap = *std::max_element(report.per_agent_gap.begin(),
                                         report.per_agent_gap.end());
  return report;
}

double AnchorRegretBound(const NormalFormGame& game) {
  return 12.0 * game.num_players() * game.payoff_ceiling() *
         std::log(static_cast<double>(game.max_actions()));
}

double LeaderRegretBound(const NormalFormGame& game, double eta) {
  return std::log(static_cast<double>(game.max_actions())) / eta;
}

double ExactCmwuRegretBound(const NormalFormGame& game, int player, double eta,
                            int horizon, double tolerance) {
  return std::log(static_cast<double>(game.num_actions(player))) / eta +
         horizon * game.payoff_ceiling() * tolerance;
}

double BaselineStepSize(const NormalFormGame& game, int horizon) {
  const double ceiling =
      game.payoff_ceiling() > 0.0 ? game.payoff_ceiling() : 1.0;
  const double log_m = std::log(static_cast<double>(game.max_actions()));
  // A one-action game has ln m = 0; any step size is equivalent there.
  return std::sqrt((log_m > 0.0 ? log_m : 1.0) / horizon) / ceiling;
}

std::vector<RateRow> RateSummary(const NormalFormGame& game,
                                 std::span<const int> horizons,
                                 DynamicsKind kind) {
  for (std::size_t h = 0; h < horizons.size(); ++h) {
    if (horizons[h] < 2 || (h > 0 && horizons[h] <= horizons[h - 1])) {
      throw ConfigError("horizons must be >= 2 and strictly increasing");
    }
  }
  std::vector<RateRow> rows;
  for (int horizon : horizons) {
    RateRow row;
    row.horizon = horizon;
    switch (kind) {
      case DynamicsKind::kCmwu: {
        const Trajectory trajectory = RunCmwuDynamics(game, horizon);
        row.gap = CceGap(game, trajectory.AnchorProfiles()).overall_gap;
        row.normalized = row.gap * horizon / std::log2(horizon);
        break;
      }
      case DynamicsKind::kMwuBaseline: {
        const Trajectory trajectory = RunMwuBaseline(
            game, horizon,
            CommonStepSizes(game, BaselineStepSize(game, horizon)));
        row.gap = CceGap(game, trajectory.profiles).overall_gap;
        row.normalized = row.gap * std::sqrt(static_cast<double>(horizon));
        break;
      }
      case DynamicsKind::kExactCmwu:
        throw ConfigError("rate tables cover cmwu and mwu dynamics only");
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace cmwu
