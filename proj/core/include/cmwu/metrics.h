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

#ifndef CMWU_METRICS_H_
#define CMWU_METRICS_H_

#include <span>
#include <vector>

#include "cmwu/dynamics.h"
#include "cmwu/game.h"

namespace cmwu {

enum class Subsequence { kFull, kAnchors };

const char* SubsequenceName(Subsequence subsequence);

struct RegretEntry {
  double regret = 0.0;
  // Best fixed pure action in hindsight; ties go to the lowest index.
  int best_response_action = 0;
};

struct RegretReport {
  std::vector<double> per_agent_regret;
  std::vector<int> best_response_action;
  int horizon_used = 0;
  Subsequence subsequence = Subsequence::kFull;
};

// External regret of `plays` against the payoff vectors they faced:
//   max_a sum_t v^t_a - sum_t <v^t, x^t>.
// A linear objective over the simplex peaks at a vertex, so enumerating pure
// actions gives the exact maximum. Negative regret is returned as is.
RegretEntry SequenceRegret(std::span<const PayoffVector> payoffs,
                           std::span<const MixedStrategy> plays);

// Regret of `player` over a sequence of profiles, with payoffs taken from the
// game. Throws InputError on an empty sequence.
RegretEntry Regret(const NormalFormGame& game,
                   std::span<const StrategyProfile> profiles, int player);

RegretReport RegretForAllAgents(const NormalFormGame& game,
                                std::span<const StrategyProfile> profiles,
                                Subsequence subsequence);

// Regret of `player` on the anchor rounds 0, k, ..., k T'.
double AnchorRegret(const NormalFormGame& game, const Trajectory& trajectory,
                    int player);

// Regret of the leader sequence z^0, z^k, ... against the payoffs of the
// anchor rounds.
double LeaderRegret(const NormalFormGame& game, const Trajectory& trajectory,
                    int player);

struct CceGapReport {
  // max(raw, 0) per agent.
  std::vector<double> per_agent_gap;
  // max_a E_mu[u_i(a, s_{-i})] - E_mu[u_i(s)], which may be negative.
  std::vector<double> per_agent_raw;
  double overall_gap = 0.0;
  int num_profiles_averaged = 0;
};

// CCE gap of the mixture mu = sum_t w_t mu_{x^t} of product distributions.
// Every expectation under mu reduces to expected utilities of the individual
// profiles, so the distribution is never materialized. Empty `weights` means
// uniform; otherwise weights must be >= 0 and sum to 1 within 1e-9.
CceGapReport CceGap(const NormalFormGame& game,
                    std::span<const StrategyProfile> profiles,
                    std::span<const double> weights = {});

// 12 n V ln m.
double AnchorRegretBound(const NormalFormGame& game);
// ln m / eta.
double LeaderRegretBound(const NormalFormGame& game, double eta);
// ln |S_i| / eta_i + T V tolerance.
double ExactCmwuRegretBound(const NormalFormGame& game, int player, double eta,
                            int horizon, double tolerance);

// Horizon-tuned Hedge step size sqrt(ln m / T) / V used for the MWU
// baseline in rate tables.
double BaselineStepSize(const NormalFormGame& game, int horizon);

struct RateRow {
  int horizon = 0;
  double gap = 0.0;
  // gap * T / log2 T for the clairvoyant dynamics, gap * sqrt(T) for MWU.
  double normalized = 0.0;
};

// Overall CCE gap per horizon. The clairvoyant dynamics use the anchor
// average with default step size and block length; the MWU baseline uses the
// uniform average over all rounds with BaselineStepSize. Horizons must be
// strictly increasing and >= 2.
std::vector<RateRow> RateSummary(const NormalFormGame& game,
                                 std::span<const int> horizons,
                                 DynamicsKind kind);

}  // namespace cmwu

#endif  // CMWU_METRICS_H_
