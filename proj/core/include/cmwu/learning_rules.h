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

#ifndef CMWU_LEARNING_RULES_H_
#define CMWU_LEARNING_RULES_H_

#include <optional>
#include <span>
#include <vector>

#include "cmwu/game.h"

namespace cmwu {

// Step size of one agent. Zero is accepted and makes every update the
// identity.
struct AgentConfig {
  double eta = 0.0;
};

// Throws DomainError unless every step size is finite and >= 0, and
// ShapeError unless there is one per player.
void CheckStepSizes(const NormalFormGame& game, std::span<const double> etas);

// The same step size for every player.
std::vector<double> CommonStepSizes(const NormalFormGame& game, double eta);

// 1 / (2 n V). A game whose payoffs are all zero is treated as V = 1.
double DefaultStepSize(const NormalFormGame& game);

// max_i eta_i * V * (n - 1): the Lipschitz constant of the profile map in the
// max-L1 profile distance. The clairvoyant update is a contraction iff this
// is < 1.
double ContractionFactor(const NormalFormGame& game,
                         std::span<const double> etas);

// Exponential-weights map anchored at `anchor`:
//   out_a = anchor_a exp(eta v_a) / sum_b anchor_b exp(eta v_b).
// Exponents are shifted by the largest payoff on the anchor's support, so the
// computation never overflows. Zero-probability actions stay at zero.
MixedStrategy MwuStep(const MixedStrategy& anchor, const PayoffVector& payoffs,
                      double eta);

// The z-sequence update of the uncoupled dynamics. Same map as MwuStep with
// the previous leader as anchor; it is a separate name so that the look-ahead
// leader sequence can be traced on its own.
MixedStrategy BtrlZUpdate(const MixedStrategy& z_prev,
                          const PayoffVector& payoffs, double eta);

// One explicit MWU step for all players, using payoffs of the current
// profile.
StrategyProfile ClassicMwuUpdate(const StrategyProfile& profile,
                                 const NormalFormGame& game,
                                 std::span<const double> etas);

// G(x)_i = MwuStep(anchors_i, v_i(x_{-i}), eta_i).
StrategyProfile ApplyProfileMap(const StrategyProfile& profile,
                                const StrategyProfile& anchors,
                                const NormalFormGame& game,
                                std::span<const double> etas);

// max_i ||x_i - y_i||_1.
double ProfileDistance(const StrategyProfile& x, const StrategyProfile& y);

enum class ContractionMode {
  // Reject step sizes with ContractionFactor >= 1.
  kStrict,
  // Iterate anyway and report non-convergence in the result.
  kLenient,
};

struct FixedPointSettings {
  double tolerance = 1e-10;
  int max_iterations = 10'000;
  ContractionMode mode = ContractionMode::kStrict;
};

struct FixedPointResult {
  // On success, the last iterate G(x^k); otherwise the iterate with the
  // smallest observed residual.
  StrategyProfile profile;
  // Number of evaluations of the profile map.
  int iterations = 0;
  // D(x^k, G(x^k)) for the iterate x^k that produced `profile`. Under a
  // contraction with factor c this also bounds D(profile, G(profile)) by
  // c * final_residual.
  double final_residual = 0.0;
  // D(x^{k+1}, x^k) / D(x^k, x^{k-1}) for every step with a nonzero
  // denominator.
  std::vector<double> contraction_estimates;
  bool converged = false;
};

// Solves x = G(x) with anchors x_t, i.e. one clairvoyant MWU step from x_t,
// by Banach iteration. Iteration starts at `initial_guess` when given and at
// x_t otherwise, and stops once D(x, G(x)) <= tolerance.
//
// Throws ConfigError for invalid settings, or for ContractionFactor >= 1 in
// strict mode.
FixedPointResult SolveCmwuFixedPoint(
    const StrategyProfile& x_t, const NormalFormGame& game,
    std::span<const double> etas, const FixedPointSettings& settings = {},
    const std::optional<StrategyProfile>& initial_guess = std::nullopt);

}  // namespace cmwu

#endif  // CMWU_LEARNING_RULES_H_
