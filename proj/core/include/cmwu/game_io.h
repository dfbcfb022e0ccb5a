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

#ifndef CMWU_GAME_IO_H_
#define CMWU_GAME_IO_H_

#include <string>

#include "cmwu/game.h"

namespace cmwu {

// Game files are JSON documents:
//
//   {"format": "cmwu-game", "version": 1, "players": n,
//    "actions": [m_1, ..., m_n],
//    "payoffs": [[...player 1 flat tensor...], ..., [...player n...]]}
//
// Each flat tensor lists payoffs in row-major pure-profile order, player 1's
// action varying slowest. "format" and "version" may be omitted; any other
// value is rejected. A "payoff_ceiling" field is ignored, the ceiling is
// always recomputed.
inline constexpr int kGameFormatVersion = 1;

// Throws InputError for malformed documents; game invariant violations
// surface as ShapeError / DomainError.
NormalFormGame GameFromJson(const std::string& text);
std::string GameToJson(const NormalFormGame& game);

NormalFormGame ReadGameFile(const std::string& path);
void WriteGameFile(const std::string& path, const NormalFormGame& game);

}  // namespace cmwu

#endif  // CMWU_GAME_IO_H_
