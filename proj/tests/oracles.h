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

// Slow, independent reimplementations used as test oracles. Nothing here
// shares code with the library beyond the game's raw payoff accessor.

#ifndef CMWU_TESTS_ORACLES_H_
#define CMWU_TESTS_ORACLES_H_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "cmwu/game.h"

namespace cmwu::oracle {

using Dist = std::vector<double>;
using Profile = std::vector<Dist>;

inline Profile ToProfile(const StrategyProfile& profile) {
  Profile out;
  for (const auto& s : profile.strategies()) {
    out.emplace_back(s.probs().begin(), s.probs().end());
  }
  return out;
}

// Enumerates every pure profile recursively and accumulates
// Pr[s] * payoff(s), with Pr[s] recomputed from scratch for each profile.
inline void Enumerate(const NormalFormGame& game, std::vector<int>& pure,
                      int depth, const auto& visit) {
  if (depth == game.num_players()) {
    visit(pure);
    return;
  }
  for (int a = 0; a < game.num_actions(depth); ++a) {
    pure[depth] = a;
    Enumerate(game, pure, depth + 1, visit);
  }
}

inline double Utility(const NormalFormGame& game, int player,
                      const Profile& x) {
  std::vector<int> pure(game.num_players());
  long double total = 0.0L;
  Enumerate(game, pure, 0, [&](const std::vector<int>& s) {
    long double prob = 1.0L;
    for (int j = 0; j < game.num_players(); ++j) prob *= x[j][s[j]];
    total += prob * game.Payoff(player, s);
  });
  return static_cast<double>(total);
}

inline Dist PayoffVector(const NormalFormGame& game, int player,
                         const Profile& x) {
  Dist v(game.num_actions(player));
  for (int a = 0; a < game.num_actions(player); ++a) {
    Profile deviated = x;
    deviated[player].assign(game.num_actions(player), 0.0);
    deviated[player][a] = 1.0;
    v[a] = Utility(game, player, deviated);
  }
  return v;
}

// Direct evaluation of a * exp(eta v) / <a, exp(eta v)> in long double,
// without any max-shift.
inline Dist Mwu(const Dist& anchor, const Dist& v, double eta) {
  Dist out(anchor.size());
  long double total = 0.0L;
  for (std::size_t a = 0; a < anchor.size(); ++a) {
    total += anchor[a] * std::exp(static_cast<long double>(eta) * v[a]);
  }
  for (std::size_t a = 0; a < anchor.size(); ++a) {
    out[a] = static_cast<double>(
        anchor[a] * std::exp(static_cast<long double>(eta) * v[a]) / total);
  }
  return out;
}

inline double L1(const Dist& x, const Dist& y) {
  double d = 0.0;
  for (std::size_t a = 0; a < x.size(); ++a) d += std::abs(x[a] - y[a]);
  return d;
}

inline double Distance(const Profile& x, const Profile& y) {
  double d = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) d = std::max(d, L1(x[j], y[j]));
  return d;
}

// Regret from cumulative sums: max_a sum_t v_t[a] - sum_t <v_t, x_t>.
inline double Regret(const std::vector<Dist>& payoffs,
                     const std::vector<Dist>& plays) {
  const std::size_t m = payoffs.front().size();
  std::vector<long double> cumulative(m, 0.0L);
  long double realized = 0.0L;
  for (std::size_t t = 0; t < payoffs.size(); ++t) {
    for (std::size_t a = 0; a < m; ++a) {
      cumulative[a] += payoffs[t][a];
      realized += payoffs[t][a] * plays[t][a];
    }
  }
  return static_cast<double>(
      *std::max_element(cumulative.begin(), cumulative.end()) - realized);
}

// Every agent runs explicit MWU from uniform: x^{t+1} = Mwu(x^t, v(x^t)).
inline std::vector<Profile> MwuTrajectory(const NormalFormGame& game,
                                          int horizon, double eta) {
  Profile x;
  for (int m : game.action_counts()) x.emplace_back(m, 1.0 / m);
  std::vector<Profile> out;
  for (int t = 0; t < horizon; ++t) {
    out.push_back(x);
    Profile next = x;
    for (int i = 0; i < game.num_players(); ++i) {
      next[i] = Mwu(x[i], PayoffVector(game, i, x), eta);
    }
    x = next;
  }
  return out;
}

// Implicit update by plain iteration until successive iterates stop moving.
inline Profile ClairvoyantStep(const NormalFormGame& game, const Profile& x_t,
                               double eta, double tolerance) {
  Profile y = x_t;
  for (int iter = 0; iter < 100000; ++iter) {
    Profile next(game.num_players());
    for (int i = 0; i < game.num_players(); ++i) {
      next[i] = Mwu(x_t[i], PayoffVector(game, i, y), eta);
    }
    const double step = Distance(next, y);
    y = next;
    if (step <= tolerance) break;
  }
  return y;
}

// Uncoupled clairvoyant dynamics written directly from the protocol:
// anchors at multiples of k, where the leader z absorbs the payoffs of the
// replayed previous strategy; otherwise play MWU from z on the last payoffs.
inline std::vector<Profile> ClairvoyantDynamics(const NormalFormGame& game,
                                                int horizon, double eta,
                                                int k,
                                                std::vector<Profile>* leaders) {
  const int n = game.num_players();
  Profile z, x_prev, last_v(n);
  for (int m : game.action_counts()) z.emplace_back(m, 1.0 / m);
  x_prev = z;
  std::vector<Profile> out;
  for (int t = 0; t < horizon; ++t) {
    Profile x(n);
    const bool anchor = t % k == 0;
    for (int i = 0; i < n; ++i) {
      x[i] = anchor ? x_prev[i] : Mwu(z[i], last_v[i], eta);
    }
    for (int i = 0; i < n; ++i) last_v[i] = PayoffVector(game, i, x);
    if (anchor) {
      for (int i = 0; i < n; ++i) z[i] = Mwu(z[i], last_v[i], eta);
      if (leaders) leaders->push_back(z);
    }
    out.push_back(x);
    x_prev = x;
  }
  return out;
}

inline double UnitDraw(std::mt19937_64& rng) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

inline MixedStrategy RandomStrategy(int m, std::mt19937_64& rng) {
  std::vector<double> w(m);
  double total = 0.0;
  for (double& p : w) total += (p = 0.05 + UnitDraw(rng));
  for (double& p : w) p /= total;
  return MixedStrategy(w);
}

inline StrategyProfile RandomProfile(const NormalFormGame& game,
                                     std::mt19937_64& rng) {
  std::vector<MixedStrategy> s;
  for (int m : game.action_counts()) s.push_back(RandomStrategy(m, rng));
  return StrategyProfile(s);
}

}  // namespace cmwu::oracle

#endif  // CMWU_TESTS_ORACLES_H_
