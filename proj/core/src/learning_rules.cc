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

#include "cmwu/learning_rules.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "cmwu/errors.h"

namespace cmwu {

void CheckStepSizes(const NormalFormGame& game, std::span<const double> etas) {
  if (static_cast<int>(etas.size()) != game.num_players()) {
    throw ShapeError("expected one step size per player");
  }
  for (double eta : etas) {
    if (!std::isfinite(eta) || eta < 0.0) {
      throw DomainError("step sizes must be finite and >= 0");
    }
  }
}

std::vector<double> CommonStepSizes(const NormalFormGame& game, double eta) {
  return std::vector<double>(game.num_players(), eta);
}

double DefaultStepSize(const NormalFormGame& game) {
  const double ceiling =
      game.payoff_ceiling() > 0.0 ? game.payoff_ceiling() : 1.0;
  return 1.0 / (2.0 * game.num_players() * ceiling);
}

double ContractionFactor(const NormalFormGame& game,
                         std::span<const double> etas) {
  const double max_eta =
      etas.empty() ? 0.0 : *std::max_element(etas.begin(), etas.end());
  return max_eta * game.payoff_ceiling() * (game.num_players() - 1);
}

MixedStrategy MwuStep(const MixedStrategy& anchor, const PayoffVector& payoffs,
                      double eta) {
  if (anchor.size() != payoffs.size()) {
    throw ShapeError("anchor and payoff vector differ in length");
  }
  if (!std::isfinite(eta) || eta < 0.0) {
    throw DomainError("step size must be finite and >= 0");
  }
  double shift = -std::numeric_limits<double>::infinity();
  for (int a = 0; a < anchor.size(); ++a) {
    if (!std::isfinite(payoffs[a])) {
      throw DomainError("payoff vector entries must be finite");
    }
    if (anchor[a] > 0.0) shift = std::max(shift, payoffs[a]);
  }
  // Renormalizing would perturb the last bits; a zero step is the identity.
  if (eta == 0.0) return anchor;
  std::vector<double> weights(anchor.size(), 0.0);
  double total = 0.0;
  for (int a = 0; a < anchor.size(); ++a) {
    if (anchor[a] > 0.0) {
      weights[a] = anchor[a] * std::exp(eta * (payoffs[a] - shift));
      total += weights[a];
    }
  }
  if (!(total > 0.0) || !std::isfinite(total)) {
    throw DomainError("anchor strategy has no mass to reweight");
  }
  for (double& w : weights) w /= total;
  return MixedStrategy(std::move(weights));
}

MixedStrategy BtrlZUpdate(const MixedStrategy& z_prev,
                          const PayoffVector& payoffs, double eta) {
  return MwuStep(z_prev, payoffs, eta);
}

StrategyProfile ClassicMwuUpdate(const StrategyProfile& profile,
                                 const NormalFormGame& game,
                                 std::span<const double> etas) {
  return ApplyProfileMap(profile, profile, game, etas);
}

StrategyProfile ApplyProfileMap(const StrategyProfile& profile,
                                const StrategyProfile& anchors,
                                const NormalFormGame& game,
                                std::span<const double> etas) {
  CheckProfileShape(game, profile);
  CheckProfileShape(game, anchors);
  CheckStepSizes(game, etas);
  std::vector<MixedStrategy> next;
  next.reserve(game.num_players());
  for (int i = 0; i < game.num_players(); ++i) {
    next.push_back(
        MwuStep(anchors[i], ComputePayoffVector(game, i, profile), etas[i]));
  }
  return StrategyProfile(std::move(next));
}

double ProfileDistance(const StrategyProfile& x, const StrategyProfile& y) {
  if (x.num_players() != y.num_players()) {
    throw ShapeError("profiles differ in the number of players");
  }
  double distance = 0.0;
  for (int i = 0; i < x.num_players(); ++i) {
    if (x[i].size() != y[i].size()) {
      throw ShapeError("profiles differ in the number of actions");
    }
    double l1 = 0.0;
    for (int a = 0; a < x[i].size(); ++a) l1 += std::abs(x[i][a] - y[i][a]);
    distance = std::max(distance, l1);
  }
  return distance;
}

FixedPointResult SolveCmwuFixedPoint(
    const StrategyProfile& x_t, const NormalFormGame& game,
    std::span<const double> etas, const FixedPointSettings& settings,
    const std::optional<StrategyProfile>& initial_guess) {
  if (!(settings.tolerance > 0.0) || settings.max_iterations < 1) {
    throw ConfigError("fixed-point tolerance must be > 0 and iterations >= 1");
  }
  CheckProfileShape(game, x_t);
  CheckStepSizes(game, etas);
  const double factor = ContractionFactor(game, etas);
  if (settings.mode == ContractionMode::kStrict && factor >= 1.0) {
    std::ostringstream msg;
    msg << "step size violates the contraction condition: max eta * V * "
           "(n - 1) = "
        << factor << " >= 1";
    throw ConfigError(msg.str());
  }

  StrategyProfile current = initial_guess.value_or(x_t);
  CheckProfileShape(game, current);
  FixedPointResult result{current, 0, 0.0, {}, false};
  double best_residual = std::numeric_limits<double>::infinity();
  double previous_step = 0.0;
  for (int iter = 1; iter <= settings.max_iterations; ++iter) {
    StrategyProfile next = ApplyProfileMap(current, x_t, game, etas);
    const double step = ProfileDistance(current, next);
    if (previous_step > 0.0) {
      result.contraction_estimates.push_back(step / previous_step);
    }
    previous_step = step;
    result.iterations = iter;
    if (step < best_residual) {
      best_residual = step;
      result.profile = next;
      result.final_residual = step;
    }
    if (step <= settings.tolerance) {
      result.converged = true;
      return result;
    }
    current = std::move(next);
  }
  return result;
}

}  // namespace cmwu
