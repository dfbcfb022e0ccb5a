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

#ifndef CMWU_TRAJECTORY_IO_H_
#define CMWU_TRAJECTORY_IO_H_

#include <string>

#include "cmwu/dynamics.h"
#include "cmwu/game.h"

namespace cmwu {

enum class ExportFormat { kCsv, kJson };

// Formats a double with 17 significant digits, enough to round-trip.
std::string FormatDouble(double value);

// CSV trajectory export, version 1. Header lines start with '#':
//
//   # cmwu-trajectory v1
//   # dynamics=<cmwu|mwu|exact-cmwu>
//   # actions=<m_1>,...,<m_n>
//   # horizon=<T>
//   # block_length=<k>
//   # eta=<eta_1>,...,<eta_n>
//   # warning=<text>            (zero or more)
//
// followed by the column row `record,round,anchor,player,action,value` and
// one row per value:
//
//   x,<t>,<0|1>,<i>,<a>,<x^t_{i,a}>      every round, player and action
//   z,<k tau>,1,<i>,<a>,<z^{k tau}_{i,a}> every anchor, player and action
//   residual,<k tau>,1,,,<D(x^{k tau}, z^{k tau})>   tau >= 1
//
// Rows appear in that order, sorted by round, player, action.
std::string TrajectoryToCsv(const NormalFormGame& game,
                            const Trajectory& trajectory);

// The same content as one JSON document with keys format, version, dynamics,
// actions, horizon, block_length, eta, warnings, rounds
// ([{t, anchor, x: [[...], ...]}]) and anchors
// ([{tau, t, z: [[...], ...], residual|null}]).
std::string TrajectoryToJson(const NormalFormGame& game,
                             const Trajectory& trajectory);

// Reads a CSV export back. Oracle logs and solver diagnostics are not part
// of the format. Throws InputError on malformed text.
Trajectory TrajectoryFromCsv(const std::string& text);

}  // namespace cmwu

#endif  // CMWU_TRAJECTORY_IO_H_
