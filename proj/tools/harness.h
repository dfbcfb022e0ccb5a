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

#ifndef CMWU_TOOLS_HARNESS_H_
#define CMWU_TOOLS_HARNESS_H_

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "cmwu/dynamics.h"
#include "cmwu/errors.h"
#include "cmwu/game.h"
#include "cmwu/learning_rules.h"
#include "cmwu/trajectory_io.h"

namespace cmwu::harness {

// Bad command-line usage (maps to kExitUsage).
class UsageError : public Error {
 public:
  using Error::Error;
};

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitCheckFailed = 3;
inline constexpr int kExitNotConverged = 4;

struct ExperimentConfig {
  // "named:<name>", "random:n=<n>,m=<m>", "zero-sum:m=<m>" or
  // "file:<path>".
  std::string game;
  std::optional<std::uint64_t> seed;
  DynamicsKind dynamics = DynamicsKind::kCmwu;
  std::vector<int> horizons;
  std::optional<double> eta;
  std::optional<int> block_length;
  double tolerance = 1e-10;
  int max_iterations = 10'000;
  std::string out_dir = ".";
  ExportFormat format = ExportFormat::kCsv;
  bool allow_nonconverged = false;
  bool lenient_contraction = false;
};

// Resolves the game source of `config`. Random generators require a seed.
NormalFormGame LoadGame(const ExperimentConfig& config);

// One row of report.csv.
struct ReportRow {
  int horizon = 0;
  int agent = 0;
  std::string subsequence;
  double regret = 0.0;
  int best_action = 0;
  // Absent for the leader sequence, which is never played.
  std::optional<double> gap;
  std::optional<double> bound;
  // "pass", "fail" or "n/a".
  std::string status;
};

struct RunOutcome {
  Trajectory trajectory;
  std::vector<ReportRow> rows;
  std::vector<std::string> artifacts;
  int exit_code = kExitOk;
};

// `run`: simulate, write trajectory.{csv,json} and report.{csv,json} into
// config.out_dir.
RunOutcome CmdRun(const ExperimentConfig& config, std::ostream& log);

struct RateTableRow {
  int horizon = 0;
  double cmwu_gap = 0.0;
  double cmwu_normalized = 0.0;
  double mwu_gap = 0.0;
  double mwu_normalized = 0.0;
  double mwu_eta = 0.0;
};

struct RatesOutcome {
  std::vector<RateTableRow> rows;
  double cmwu_bound = 0.0;
  int exit_code = kExitOk;
};

// `rates`: CCE gap per horizon for both dynamics, written to
// rates.{csv,json}. Needs at least three horizons.
RatesOutcome CmdRates(const ExperimentConfig& config, std::ostream& log);

struct PropertyResult {
  std::string name;
  // "pass", "fail", "n/a" or "nonconverged".
  std::string status;
  int cases = 0;
  // Smallest slack (bound - observed) across cases; negative on failure.
  double worst_margin = 0.0;
  std::string detail;
};

struct VerifyOutcome {
  std::vector<PropertyResult> properties;
  int exit_code = kExitOk;
};

// `verify`: seeded property batteries. --eta replaces the step size of the
// batteries that take one.
VerifyOutcome CmdVerify(const ExperimentConfig& config, std::ostream& log);

// Full command-line entry point.
int Main(int argc, const char* const* argv, std::ostream& out,
         std::ostream& err);

}  // namespace cmwu::harness

#endif  // CMWU_TOOLS_HARNESS_H_
