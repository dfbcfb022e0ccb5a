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

#include "cmwu/trajectory_io.h"

#include <cstdio>
#include <map>
#include <sstream>

#include "cmwu/errors.h"
#include "json.hpp"

namespace cmwu {
namespace {

using nlohmann::json;

constexpr char kCsvMagic[] = "# cmwu-trajectory v1";
constexpr char kCsvColumns[] = "record,round,anchor,player,action,value";

std::vector<std::string> Split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string part;
  std::istringstream stream(text);
  while (std::getline(stream, part, sep)) parts.push_back(part);
  if (!text.empty() && text.back() == sep) parts.emplace_back();
  return parts;
}

template <typename T>
std::string JoinNumbers(const std::vector<T>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out += ',';
    if constexpr (std::is_floating_point_v<T>) {
      out += FormatDouble(values[i]);
    } else {
      out += std::to_string(values[i]);
    }
  }
  return out;
}

double ParseDouble(const std::string& text) {
  try {
    std::size_t used = 0;
    const double value = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return value;
  } catch (const std::exception&) {
    throw InputError("not a number in trajectory file: '" + text + "'");
  }
}

int ParseInt(const std::string& text) {
  try {
    std::size_t used = 0;
    const int value = std::stoi(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return value;
  } catch (const std::exception&) {
    throw InputError("not an integer in trajectory file: '" + text + "'");
  }
}

DynamicsKind ParseDynamics(const std::string& name) {
  for (auto kind : {DynamicsKind::kCmwu, DynamicsKind::kMwuBaseline,
                    DynamicsKind::kExactCmwu}) {
    if (name == DynamicsName(kind)) return kind;
  }
  throw InputError("unknown dynamics in trajectory file: " + name);
}

json ProfileToJson(const StrategyProfile& profile) {
  json out = json::array();
  for (const auto& strategy : profile.strategies()) {
    const auto probs = strategy.probs();
    out.push_back(std::vector<double>(probs.begin(), probs.end()));
  }
  return out;
}

}  // namespace

std::string FormatDouble(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

std::string TrajectoryToCsv(const NormalFormGame& game,
                            const Trajectory& trajectory) {
  std::ostringstream out;
  out << kCsvMagic << '\n'
      << "# dynamics=" << DynamicsName(trajectory.kind) << '\n'
      << "# actions=" << JoinNumbers(game.action_counts()) << '\n'
      << "# horizon=" << trajectory.horizon() << '\n'
      << "# block_length=" << trajectory.block_length << '\n'
      << "# eta=" << JoinNumbers(trajectory.etas) << '\n';
  for (const auto& warning : trajectory.warnings) {
    out << "# warning=" << warning << '\n';
  }
  out << kCsvColumns << '\n';
  const int k = trajectory.block_length;
  for (int t = 0; t < trajectory.horizon(); ++t) {
    const auto& profile = trajectory.profiles[t];
    for (int i = 0; i < profile.num_players(); ++i) {
      for (int a = 0; a < profile[i].size(); ++a) {
        out << "x," << t << ',' << (t % k == 0 ? 1 : 0) << ',' << i << ','
            << a << ',' << FormatDouble(profile[i][a]) << '\n';
      }
    }
  }
  for (std::size_t tau = 0; tau < trajectory.z_snapshots.size(); ++tau) {
    const auto& z = trajectory.z_snapshots[tau];
    for (int i = 0; i < z.num_players(); ++i) {
      for (int a = 0; a < z[i].size(); ++a) {
        out << "z," << tau * k << ",1," << i << ',' << a << ','
            << FormatDouble(z[i][a]) << '\n';
      }
    }
  }
  for (std::size_t r = 0; r < trajectory.block_residuals.size(); ++r) {
    out << "residual," << (r + 1) * k << ",1,,,"
        << FormatDouble(trajectory.block_residuals[r]) << '\n';
  }
  return out.str();
}

std::string TrajectoryToJson(const NormalFormGame& game,
                             const Trajectory& trajectory) {
  json doc;
  doc["format"] = "cmwu-trajectory";
  doc["version"] = 1;
  doc["dynamics"] = DynamicsName(trajectory.kind);
  doc["actions"] = game.action_counts();
  doc["horizon"] = trajectory.horizon();
  doc["block_length"] = trajectory.block_length;
  doc["eta"] = trajectory.etas;
  doc["warnings"] = trajectory.warnings;
  json rounds = json::array();
  const int k = trajectory.block_length;
  for (int t = 0; t < trajectory.horizon(); ++t) {
    rounds.push_back({{"t", t},
                      {"anchor", t % k == 0},
                      {"x", ProfileToJson(trajectory.profiles[t])}});
  }
  doc["rounds"] = std::move(rounds);
  json anchors = json::array();
  for (std::size_t tau = 0; tau < trajectory.z_snapshots.size(); ++tau) {
    json entry = {{"tau", tau},
                  {"t", tau * k},
                  {"z", ProfileToJson(trajectory.z_snapshots[tau])}};
    entry["residual"] = tau == 0 || tau > trajectory.block_residuals.size()
                            ? json(nullptr)
                            : json(trajectory.block_residuals[tau - 1]);
    anchors.push_back(std::move(entry));
  }
  doc["anchors"] = std::move(anchors);
  return doc.dump(1) + "\n";
}

Trajectory TrajectoryFromCsv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != kCsvMagic) {
    throw InputError("not a cmwu-trajectory v1 file");
  }
  Trajectory trajectory;
  std::vector<int> actions;
  int horizon = -1;
  bool saw_columns = false;
  while (!saw_columns && std::getline(in, line)) {
    if (line == kCsvColumns) {
      saw_columns = true;
      break;
    }
    if (line.rfind("# ", 0) != 0) throw InputError("bad header line: " + line);
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw InputError("bad header line: " + line);
    const std::string key = line.substr(2, eq - 2);
    const std::string value = line.substr(eq + 1);
    if (key == "dynamics") {
      trajectory.kind = ParseDynamics(value);
    } else if (key == "actions") {
      for (const auto& part : Split(value, ',')) actions.push_back(ParseInt(part));
    } else if (key == "horizon") {
      horizon = ParseInt(value);
    } else if (key == "block_length") {
      trajectory.block_length = ParseInt(value);
    } else if (key == "eta") {
      for (const auto& part : Split(value, ',')) {
        trajectory.etas.push_back(ParseDouble(part));
      }
    } else if (key == "warning") {
      trajectory.warnings.push_back(value);
    } else {
      throw InputError("unknown header key: " + key);
    }
  }
  if (!saw_columns || actions.empty() || horizon < 1 ||
      trajectory.block_length < 1) {
    throw InputError("trajectory header is incomplete");
  }
  const int n = static_cast<int>(actions.size());
  auto empty_profile = [&] {
    std::vector<std::vector<double>> probs(n);
    for (int i = 0; i < n; ++i) probs[i].assign(actions[i], 0.0);
    return probs;
  };
  std::vector<std::vector<std::vector<double>>> xs(horizon, empty_profile());
  std::map<int, std::vector<std::vector<double>>> zs;
  std::map<int, double> residuals;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto fields = Split(line, ',');
    if (fields.size() != 6) throw InputError("bad trajectory row: " + line);
    const int round = ParseInt(fields[1]);
    const double value = ParseDouble(fields[5]);
    if (fields[0] == "residual") {
      residuals[round] = value;
      continue;
    }
    const int player = ParseInt(fields[3]);
    const int action = ParseInt(fields[4]);
    if (round < 0 || round >= horizon || player < 0 || player >= n ||
        action < 0 || action >= actions[player]) {
      throw InputError("trajectory row out of range: " + line);
    }
    if (fields[0] == "x") {
      xs[round][player][action] = value;
    } else if (fields[0] == "z") {
      auto [it, inserted] = zs.try_emplace(round, empty_profile());
      it->second[player][action] = value;
    } else {
      throw InputError("unknown record type: " + fields[0]);
    }
  }
  auto to_profile = [&](std::vector<std::vector<double>>& probs) {
    std::vector<MixedStrategy> strategies;
    for (auto& p : probs) strategies.emplace_back(std::move(p));
    return StrategyProfile(std::move(strategies));
  };
  for (auto& x : xs) trajectory.profiles.push_back(to_profile(x));
  for (auto& [round, z] : zs) trajectory.z_snapshots.push_back(to_profile(z));
  for (const auto& [round, residual] : residuals) {
    trajectory.block_residuals.push_back(residual);
  }
  return trajectory;
}

}  // namespace cmwu
