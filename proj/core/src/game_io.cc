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

#include "cmwu/game_io.h"

#include <fstream>
#include <sstream>

#include "cmwu/errors.h"
#include "json.hpp"

namespace cmwu {

using nlohmann::json;

NormalFormGame GameFromJson(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("game file is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw InputError("game file must be a JSON object");
  if (doc.contains("format") && doc["format"] != "cmwu-game") {
    throw InputError("game file has an unexpected format tag");
  }
  if (doc.contains("version") && doc["version"] != kGameFormatVersion) {
    throw InputError("unsupported game file version");
  }
  for (const char* key : {"players", "actions", "payoffs"}) {
    if (!doc.contains(key)) {
      throw InputError(std::string("game file is missing '") + key + "'");
    }
  }
  try {
    const int players = doc["players"].get<int>();
    auto actions = doc["actions"].get<std::vector<int>>();
    auto payoffs = doc["payoffs"].get<std::vector<std::vector<double>>>();
    if (players < 1 || static_cast<int>(actions.size()) != players) {
      throw InputError("'players' must match the length of 'actions'");
    }
    return NormalFormGame(std::move(actions), std::move(payoffs));
  } catch (const json::exception& e) {
    throw InputError(std::string("game file has a malformed field: ") +
                     e.what());
  }
}

std::string GameToJson(const NormalFormGame& game) {
  json doc;
  doc["format"] = "cmwu-game";
  doc["version"] = kGameFormatVersion;
  doc["players"] = game.num_players();
  doc["actions"] = game.action_counts();
  json payoffs = json::array();
  for (int i = 0; i < game.num_players(); ++i) {
    const auto tensor = game.payoffs(i);
    payoffs.push_back(std::vector<double>(tensor.begin(), tensor.end()));
  }
  doc["payoffs"] = std::move(payoffs);
  return doc.dump() + "\n";
}

NormalFormGame ReadGameFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read game file " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return GameFromJson(buffer.str());
}

void WriteGameFile(const std::string& path, const NormalFormGame& game) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write game file " + path);
  out << GameToJson(game);
}

}  // namespace cmwu
