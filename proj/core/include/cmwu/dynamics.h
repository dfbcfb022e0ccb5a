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

#ifndef CMWU_DYNAMICS_H_
#define CMWU_DYNAMICS_H_

#include <optional>
#include <string>
#include <vector>

#include "cmwu/game.h"
#include "cmwu/learning_rules.h"

namespace cmwu {

// ceil(log2(horizon)), at least 1.
int DefaultBlockLength(int horizon);

// Mediator of the round-synchronous protocol. The harness publishes the
// broadcast profile of each round; an agent can then ask for its own payoff
// vector against that profile, once. Every request is logged.
class PayoffOracle {
 public:
  struct Access {
    int round;
    int player;
    bool operator==(const Access&) const = default;
  };

  explicit PayoffOracle(const NormalFormGame& game) : game_(&game) {}

  // Rounds must be published in order 0, 1, 2, ...
  void Publish(int round, StrategyProfile broadcast);

  // Throws ProtocolError for a round other than the published one, or for a
  // second request by the same player in a round.
  PayoffVector Query(int player, int round);

  int current_round() const { return round_; }
  const std::vector<Access>& access_log() const { return log_; }

 private:
  const NormalFormGame* game_;
  int round_ = -1;
  std::optional<StrategyProfile> broadcast_;
  std::vector<bool> served_;
  std::vector<Access> log_;
};

// One agent running the internal clairvoyant-MWU rule. Rounds t with
// t mod k == 0 are anchor rounds: the agent replays its previous strategy and
// folds the payoffs it then observes into its leader z. On the other rounds z
// is frozen and the agent plays the exponential-weights response anchored at
// z to the payoffs of the previous round, i.e. one step of the contraction
// iteration towards the next anchor.
//
// Each round is two calls: Broadcast(t), then (after every agent has
// broadcast and the oracle has the profile) Observe(t, oracle).
class CmwuAgent {
 public:
  CmwuAgent(int player, int num_actions, double eta, int block_length);

  MixedStrategy Broadcast(int round);
  void Observe(int round, PayoffOracle& oracle);

  int player() const { return player_; }
  double eta() const { return eta_; }
  int block_length() const { return block_length_; }
  // x_i^{t-1} before Broadcast(t); x_i^t afterwards.
  const MixedStrategy& last_played() const { return x_prev_; }
  const MixedStrategy& leader() const { return z_; }
  const std::optional<PayoffVector>& last_payoffs() const {
    return last_payoffs_;
  }

 private:
  int player_;
  double eta_;
  int block_length_;
  MixedStrategy x_prev_;
  MixedStrategy z_;
  std::optional<PayoffVector> last_payoffs_;
  int next_round_ = 0;
  bool awaiting_payoffs_ = false;
};

enum class DynamicsKind { kCmwu, kMwuBaseline, kExactCmwu };

const char* DynamicsName(DynamicsKind kind);

// Record of one run. Rounds t with t mod block_length == 0 are anchors; for
// the MWU baseline and the exact clairvoyant sequence the block length is 1.
struct Trajectory {
  DynamicsKind kind = DynamicsKind::kCmwu;
  int block_length = 1;
  std::vector<double> etas;
  // x^0 .. x^{T-1}.
  std::vector<StrategyProfile> profiles;
  // One profile per anchor. For the uncoupled dynamics this is the leader
  // z^{k tau} after the anchor update; for the MWU baseline the strategy
  // after the round-t update (x^{t+1}); for the exact sequence x^t itself.
  std::vector<StrategyProfile> z_snapshots;
  // D(x^{k tau}, z^{k tau}) for tau = 1 .. T'.
  std::vector<double> block_residuals;
  std::vector<PayoffOracle::Access> oracle_log;
  std::vector<std::string> warnings;
  // Exact clairvoyant sequence only: per-step solver diagnostics.
  std::vector<int> solver_iterations;
  std::vector<double> solver_residuals;
  bool solver_converged = true;

  int horizon() const { return static_cast<int>(profiles.size()); }
  // T' + 1 = floor((T - 1) / k) + 1.
  int num_anchors() const;
  std::vector<int> AnchorRounds() const;
  std::vector<StrategyProfile> AnchorProfiles() const;
};

struct DynamicsOptions {
  // Per-player step sizes; takes precedence over `eta`.
  std::optional<std::vector<double>> etas;
  std::optional<double> eta;
  std::optional<int> block_length;
};

// Step sizes requested by `options`, or the default 1 / (2 n V).
std::vector<double> ResolveStepSizes(const NormalFormGame& game,
                                     const DynamicsOptions& options);

// Uncoupled clairvoyant-MWU dynamics over `horizon` rounds. Defaults:
// eta = 1 / (2 n V), k = ceil(log2 T). Step sizes that break the contraction
// condition are allowed but leave a warning in the trajectory.
Trajectory RunCmwuDynamics(const NormalFormGame& game, int horizon,
                           const DynamicsOptions& options = {});

// Every agent runs explicit MWU from the uniform profile.
Trajectory RunMwuBaseline(const NormalFormGame& game, int horizon,
                          std::span<const double> etas);

// Centralized sequence where each profile is the exact clairvoyant update of
// the previous one, starting from x^{-1} = uniform. Not an uncoupled
// protocol: the solver sees the whole game.
Trajectory RunExactCmwu(const NormalFormGame& game, int horizon,
                        std::span<const double> etas,
                        const FixedPointSettings& settings = {});

}  // namespace cmwu

#endif  // CMWU_DYNAMICS_H_
