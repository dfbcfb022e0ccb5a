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

#include "harness.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "cmwu/game_io.h"
#include "cmwu/metrics.h"
#include "json.hpp"

namespace cmwu::harness {
namespace {

using nlohmann::json;

std::string Short(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.6g", value);
  return buffer;
}

std::string OptionalNumber(const std::optional<double>& value) {
  return value ? FormatDouble(*value) : "";
}

json OptionalJson(const std::optional<double>& value) {
  return value ? json(*value) : json(nullptr);
}

void WriteFile(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path.string());
  out << text;
}

std::filesystem::path PrepareOutDir(const ExperimentConfig& config) {
  std::filesystem::path dir(config.out_dir);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw InputError("cannot create output directory " + dir.string());
  return dir;
}

const char* Extension(ExportFormat format) {
  return format == ExportFormat::kCsv ? ".csv" : ".json";
}

std::string Status(bool ok) { return ok ? "pass" : "fail"; }

std::vector<std::string> RunHeader(const ExperimentConfig& config,
                                   const Trajectory& trajectory) {
  std::vector<std::string> header;
  header.push_back(std::string("dynamics=") + DynamicsName(config.dynamics));
  header.push_back("game=" + config.game);
  if (config.seed) header.push_back("seed=" + std::to_string(*config.seed));
  header.push_back("horizon=" + std::to_string(trajectory.horizon()));
  if (config.dynamics == DynamicsKind::kExactCmwu) {
    header.push_back(
        "note=centralized fixed-point sequence, not an uncoupled dynamic");
  }
  return header;
}

std::string ReportToCsv(const std::vector<std::string>& header,
                        const std::vector<ReportRow>& rows) {
  std::ostringstream out;
  out << "# cmwu-report v1\n";
  for (const auto& line : header) out << "# " << line << '\n';
  out << "T,agent,subsequence,regret,best_action,gap,bound,status\n";
  for (const auto& row : rows) {
    out << row.horizon << ',' << row.agent << ',' << row.subsequence << ','
        << FormatDouble(row.regret) << ',' << row.best_action << ','
        << OptionalNumber(row.gap) << ',' << OptionalNumber(row.bound) << ','
        << row.status << '\n';
  }
  return out.str();
}

std::string ReportToJson(const std::vector<std::string>& header,
                         const std::vector<ReportRow>& rows) {
  json doc;
  doc["format"] = "cmwu-report";
  doc["version"] = 1;
  doc["header"] = header;
  json entries = json::array();
  for (const auto& row : rows) {
    entries.push_back({{"T", row.horizon},
                       {"agent", row.agent},
                       {"subsequence", row.subsequence},
                       {"regret", row.regret},
                       {"best_action", row.best_action},
                       {"gap", OptionalJson(row.gap)},
                       {"bound", OptionalJson(row.bound)},
                       {"status", row.status}});
  }
  doc["rows"] = std::move(entries);
  return doc.dump(1) + "\n";
}

int SingleHorizon(const ExperimentConfig& config) {
  if (config.horizons.size() != 1) {
    throw UsageError("run takes exactly one --T");
  }
  if (config.horizons.front() < 1) throw UsageError("--T must be >= 1");
  return config.horizons.front();
}

FixedPointSettings SolverSettings(const ExperimentConfig& config) {
  FixedPointSettings settings;
  settings.tolerance = config.tolerance;
  settings.max_iterations = config.max_iterations;
  settings.mode = config.lenient_contraction ? ContractionMode::kLenient
                                             : ContractionMode::kStrict;
  return settings;
}

// ---------------------------------------------------------------------------
// Verify batteries.

struct Battery {
  PropertyResult result;
  bool first_failure_recorded = false;

  explicit Battery(std::string name) {
    result.name = std::move(name);
    result.status = "pass";
    result.worst_margin = std::numeric_limits<double>::infinity();
  }

  void Record(double margin, const std::string& inputs) {
    ++result.cases;
    result.worst_margin = std::min(result.worst_margin, margin);
    if (margin < 0.0) {
      result.status = "fail";
      if (!first_failure_recorded) {
        result.detail = "first failure: " + inputs;
        first_failure_recorded = true;
      }
    }
  }

  PropertyResult Finish() {
    if (result.cases == 0) result.worst_margin = 0.0;
    return result;
  }
};

PropertyResult NotApplicable(std::string name, std::string why) {
  PropertyResult result;
  result.name = std::move(name);
  result.status = "n/a";
  result.detail = std::move(why);
  return result;
}

double Unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

int UniformInt(std::mt19937_64& rng, int lo, int hi) {
  return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

MixedStrategy RandomStrategy(int m, std::mt19937_64& rng) {
  std::vector<double> weights(m);
  double total = 0.0;
  for (double& w : weights) {
    w = -std::log(1.0 - Unit(rng));
    if (!(w > 0.0)) w = 1e-3;
    total += w;
  }
  for (double& w : weights) w /= total;
  return MixedStrategy(std::move(weights));
}

StrategyProfile RandomProfile(const NormalFormGame& game, std::mt19937_64& rng) {
  std::vector<MixedStrategy> strategies;
  for (int count : game.action_counts()) {
    strategies.push_back(RandomStrategy(count, rng));
  }
  return StrategyProfile(std::move(strategies));
}

NormalFormGame RandomGame(int n, int m, std::uint64_t seed) {
  return GenerateGame({GeneratorKind::kRandomUniform, n, m, seed, ""});
}

std::string Describe(std::uint64_t seed, int n, int m, double eta) {
  std::ostringstream out;
  out.precision(17);
  out << "case_seed=" << seed << " n=" << n << " m=" << m << " eta=" << eta;
  return out.str();
}

PropertyResult VerifyLipschitz(std::uint64_t seed) {
  Battery battery("lipschitz");
  std::mt19937_64 rng(seed);
  for (int c = 0; c < 1000; ++c) {
    const std::uint64_t case_seed = rng();
    std::mt19937_64 local(case_seed);
    const int m = UniformInt(local, 1, 20);
    const double eta = Unit(local);
    const MixedStrategy anchor = RandomStrategy(m, local);
    std::vector<double> v(m), w(m);
    double sup = 0.0;
    for (int a = 0; a < m; ++a) {
      v[a] = Unit(local);
      w[a] = Unit(local);
      sup = std::max(sup, std::abs(v[a] - w[a]));
    }
    const MixedStrategy fv = MwuStep(anchor, PayoffVector(v), eta);
    const MixedStrategy fw = MwuStep(anchor, PayoffVector(w), eta);
    double l1 = 0.0;
    for (int a = 0; a < m; ++a) l1 += std::abs(fv[a] - fw[a]);
    battery.Record(2.0 * eta * sup + 1e-9 - l1, Describe(case_seed, 1, m, eta));
  }
  return battery.Finish();
}

PropertyResult VerifyContraction(std::uint64_t seed,
                                 std::optional<double> eta_override) {
  Battery battery("contraction");
  std::mt19937_64 rng(seed);
  for (int c = 0; c < 200; ++c) {
    const std::uint64_t case_seed = rng();
    std::mt19937_64 local(case_seed);
    const int n = UniformInt(local, 2, 3);
    const int m = UniformInt(local, 2, 5);
    const NormalFormGame game = RandomGame(n, m, local());
    const double limit = 1.0 / ((n - 1) * game.payoff_ceiling());
    const double eta = eta_override.value_or(Unit(local) * limit);
    const auto etas = CommonStepSizes(game, eta);
    const double factor = ContractionFactor(game, etas);
    if (factor >= 1.0) {
      return NotApplicable("contraction",
                           "step size gives max eta * V * (n - 1) = " +
                               Short(factor) + " >= 1");
    }
    const StrategyProfile anchors = RandomProfile(game, local);
    const StrategyProfile x = RandomProfile(game, local);
    const StrategyProfile y = RandomProfile(game, local);
    const double before = ProfileDistance(x, y);
    const double after =
        ProfileDistance(ApplyProfileMap(x, anchors, game, etas),
                        ApplyProfileMap(y, anchors, game, etas));
    battery.Record(factor * before + 1e-9 - after,
                   Describe(case_seed, n, m, eta));
  }
  return battery.Finish();
}

std::vector<PropertyResult> VerifyFixedPoint(std::uint64_t seed,
                                             const ExperimentConfig& config) {
  Battery solve("fixed-point");
  Battery ratio("solver-ratio");
  int nonconverged = 0;
  bool ratio_applicable = true;
  std::string nonconverged_detail;
  std::mt19937_64 rng(seed);
  const FixedPointSettings settings = SolverSettings(config);
  for (int n : {2, 3}) {
    for (int m : {2, 5, 10}) {
      for (int rep = 0; rep < 3; ++rep) {
        const std::uint64_t case_seed = rng();
        std::mt19937_64 local(case_seed);
        const NormalFormGame game = RandomGame(n, m, local());
        const double eta = config.eta.value_or(DefaultStepSize(game));
        const auto etas = CommonStepSizes(game, eta);
        const double factor = ContractionFactor(game, etas);
        const StrategyProfile x_t = RandomProfile(game, local);
        const FixedPointResult result =
            SolveCmwuFixedPoint(x_t, game, etas, settings);
        if (!result.converged) {
          if (nonconverged++ == 0) {
            nonconverged_detail = "first non-converged: " +
                                  Describe(case_seed, n, m, eta) +
                                  " residual=" + Short(result.final_residual);
          }
          continue;
        }
        const double residual = ProfileDistance(
            result.profile, ApplyProfileMap(result.profile, x_t, game, etas));
        solve.Record(10.0 * settings.tolerance - residual,
                     Describe(case_seed, n, m, eta));
        if (factor >= 1.0) {
          ratio_applicable = false;
          continue;
        }
        double worst = 0.0;
        for (double r : result.contraction_estimates) worst = std::max(worst, r);
        ratio.Record(factor + 1e-6 - worst, Describe(case_seed, n, m, eta));
      }
    }
  }
  PropertyResult solve_result = solve.Finish();
  if (nonconverged > 0) {
    solve_result.status = "nonconverged";
    solve_result.detail = std::to_string(nonconverged) +
                          " solve(s) hit the iteration cap; " +
                          nonconverged_detail;
  }
  PropertyResult ratio_result =
      ratio_applicable
          ? ratio.Finish()
          : NotApplicable("solver-ratio", "step size breaks the contraction");
  return {solve_result, ratio_result};
}

std::vector<PropertyResult> VerifyDynamics(std::uint64_t seed,
                                           std::optional<double> eta_override) {
  Battery residual("block-residual");
  Battery anchor("anchor-regret");
  Battery leader("leader-regret");
  bool residual_applicable = true;
  std::mt19937_64 rng(seed);
  constexpr int kHorizon = 1024;
  for (int n : {2, 3}) {
    for (int m : {2, 5}) {
      for (int rep = 0; rep < 2; ++rep) {
        const std::uint64_t case_seed = rng();
        const NormalFormGame game = RandomGame(n, m, case_seed);
        DynamicsOptions options;
        options.eta = eta_override;
        const Trajectory trajectory = RunCmwuDynamics(game, kHorizon, options);
        const double eta = trajectory.etas.front();
        const std::string inputs = Describe(case_seed, n, m, eta);
        if (ContractionFactor(game, trajectory.etas) <= 0.5) {
          double worst = 0.0;
          for (double r : trajectory.block_residuals) {
            worst = std::max(worst, r);
          }
          residual.Record(8.0 / std::ldexp(1.0, trajectory.block_length) - worst,
                          inputs);
        } else {
          residual_applicable = false;
        }
        for (int i = 0; i < n; ++i) {
          if (!eta_override) {
            anchor.Record(
                AnchorRegretBound(game) - AnchorRegret(game, trajectory, i),
                inputs);
          }
          if (eta > 0.0) {
            leader.Record(LeaderRegretBound(game, eta) -
                              LeaderRegret(game, trajectory, i),
                          inputs);
          }
        }
      }
    }
  }
  // Arbitrary payoff sequences fed straight into the leader update.
  for (int c = 0; c < 50; ++c) {
    const std::uint64_t case_seed = rng();
    std::mt19937_64 local(case_seed);
    const int m = UniformInt(local, 2, 10);
    const double eta = 0.01 + Unit(local);
    const int length = UniformInt(local, 1, 300);
    MixedStrategy z = MixedStrategy::Uniform(m);
    std::vector<PayoffVector> payoffs;
    std::vector<MixedStrategy> leaders;
    for (int t = 0; t < length; ++t) {
      std::vector<double> v(m);
      for (double& x : v) x = Unit(local);
      payoffs.emplace_back(v);
      z = BtrlZUpdate(z, payoffs.back(), eta);
      leaders.push_back(z);
    }
    leader.Record(std::log(static_cast<double>(m)) / eta -
                      SequenceRegret(payoffs, leaders).regret,
                  Describe(case_seed, 1, m, eta));
  }
  std::vector<PropertyResult> results;
  results.push_back(residual_applicable
                        ? residual.Finish()
                        : NotApplicable("block-residual",
                                        "step size gives contraction > 1/2"));
  results.push_back(eta_override ? NotApplicable("anchor-regret",
                                                 "bound assumes eta = 1/(2nV)")
                                 : anchor.Finish());
  results.push_back(leader.Finish());
  return results;
}

PropertyResult VerifyCceIdentity(std::uint64_t seed) {
  Battery battery("cce-identity");
  std::mt19937_64 rng(seed);
  for (int c = 0; c < 50; ++c) {
    const std::uint64_t case_seed = rng();
    std::mt19937_64 local(case_seed);
    const int n = UniformInt(local, 1, 3);
    const int m = UniformInt(local, 1, 4);
    const NormalFormGame game = RandomGame(n, m, local());
    const int length = UniformInt(local, 1, 40);
    std::vector<StrategyProfile> profiles;
    for (int t = 0; t < length; ++t) {
      profiles.push_back(RandomProfile(game, local));
    }
    const CceGapReport gap = CceGap(game, profiles);
    for (int i = 0; i < n; ++i) {
      const double regret = Regret(game, profiles, i).regret;
      battery.Record(1e-10 - std::abs(gap.per_agent_raw[i] - regret / length),
                     Describe(case_seed, n, m, 0.0));
    }
  }
  return battery.Finish();
}

PropertyResult VerifyUtilityIdentity(std::uint64_t seed) {
  Battery battery("utility-identity");
  std::mt19937_64 rng(seed);
  for (int c = 0; c < 100; ++c) {
    const std::uint64_t case_seed = rng();
    std::mt19937_64 local(case_seed);
    const int n = UniformInt(local, 1, 4);
    const int m = UniformInt(local, 1, 4);
    const NormalFormGame game = RandomGame(n, m, local());
    const StrategyProfile x = RandomProfile(game, local);
    for (int i = 0; i < n; ++i) {
      const double direct = ExpectedUtility(game, i, x);
      const double via_vector = Dot(ComputePayoffVector(game, i, x), x[i]);
      battery.Record(1e-10 - std::abs(direct - via_vector),
                     Describe(case_seed, n, m, 0.0));
    }
  }
  return battery.Finish();
}

// ---------------------------------------------------------------------------
// Command-line plumbing.

DynamicsKind ParseDynamicsFlag(const std::string& name) {
  if (name == "cmwu") return DynamicsKind::kCmwu;
  if (name == "mwu") return DynamicsKind::kMwuBaseline;
  if (name == "exact-cmwu") return DynamicsKind::kExactCmwu;
  throw UsageError("unknown --dynamics '" + name + "'");
}

struct Flags {
  std::string game;
  std::optional<std::uint64_t> seed;
  std::string dynamics = "cmwu";
  std::vector<int> horizons;
  std::optional<double> eta;
  std::optional<int> block_length;
  double tolerance = 1e-10;
  int max_iterations = 10'000;
  std::string out = ".";
  std::string format = "csv";
  bool allow_nonconverged = false;
  bool lenient_contraction = false;
};

void AddCommonFlags(CLI::App& cmd, Flags& flags, bool game_required) {
  auto* game = cmd.add_option(
      "--game", flags.game,
      "named:<name> | random:n=<n>,m=<m> | zero-sum:m=<m> | file:<path>");
  if (game_required) game->required();
  cmd.add_option("--seed", flags.seed, "seed for random games and batteries");
  cmd.add_option("--dynamics", flags.dynamics, "cmwu | mwu | exact-cmwu")
      ->check(CLI::IsMember({"cmwu", "mwu", "exact-cmwu"}));
  cmd.add_option("--T", flags.horizons, "horizon (repeatable)")
      ->allow_extra_args(false);
  cmd.add_option("--eta", flags.eta, "step size override")
      ->check(CLI::NonNegativeNumber);
  cmd.add_option("--k", flags.block_length, "block length override")
      ->check(CLI::PositiveNumber);
  cmd.add_option("--tolerance", flags.tolerance,
                 "fixed-point tolerance on the profile distance")
      ->check(CLI::PositiveNumber);
  cmd.add_option("--max-iterations", flags.max_iterations,
                 "fixed-point iteration cap")
      ->check(CLI::PositiveNumber);
  cmd.add_option("--out", flags.out, "output directory");
  cmd.add_option("--format", flags.format, "csv | json")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd.add_flag("--allow-nonconverged", flags.allow_nonconverged,
               "exit 0 even if a fixed-point solve hits the iteration cap");
  cmd.add_flag("--lenient-contraction", flags.lenient_contraction,
               "run the solver even when the step size breaks the "
               "contraction condition");
}

ExperimentConfig ToConfig(const Flags& flags) {
  ExperimentConfig config;
  config.game = flags.game;
  config.seed = flags.seed;
  config.dynamics = ParseDynamicsFlag(flags.dynamics);
  config.horizons = flags.horizons;
  config.eta = flags.eta;
  config.block_length = flags.block_length;
  config.tolerance = flags.tolerance;
  config.max_iterations = flags.max_iterations;
  config.out_dir = flags.out;
  config.format =
      flags.format == "json" ? ExportFormat::kJson : ExportFormat::kCsv;
  config.allow_nonconverged = flags.allow_nonconverged;
  config.lenient_contraction = flags.lenient_contraction;
  return config;
}

}  // namespace

NormalFormGame LoadGame(const ExperimentConfig& config) {
  if (config.game.empty()) throw UsageError("--game is required");
  if (config.game.rfind("file:", 0) == 0) {
    return ReadGameFile(config.game.substr(5));
  }
  GeneratorSpec spec = ParseGeneratorSpec(config.game, config.seed.value_or(0));
  if (spec.kind != GeneratorKind::kNamed && !config.seed) {
    throw ConfigError("--seed is required for random games");
  }
  return GenerateGame(spec);
}

RunOutcome CmdRun(const ExperimentConfig& config, std::ostream& log) {
  const int horizon = SingleHorizon(config);
  const NormalFormGame game = LoadGame(config);
  const std::filesystem::path dir = PrepareOutDir(config);

  RunOutcome outcome;
  const double default_eta = DefaultStepSize(game);
  switch (config.dynamics) {
    case DynamicsKind::kCmwu: {
      DynamicsOptions options;
      options.eta = config.eta;
      options.block_length = config.block_length;
      outcome.trajectory = RunCmwuDynamics(game, horizon, options);
      break;
    }
    case DynamicsKind::kMwuBaseline:
      outcome.trajectory = RunMwuBaseline(
          game, horizon,
          CommonStepSizes(game,
                          config.eta.value_or(BaselineStepSize(game, horizon))));
      break;
    case DynamicsKind::kExactCmwu:
      outcome.trajectory = RunExactCmwu(
          game, horizon, CommonStepSizes(game, config.eta.value_or(default_eta)),
          SolverSettings(config));
      break;
  }
  const Trajectory& trajectory = outcome.trajectory;
  for (const auto& warning : trajectory.warnings) {
    log << "warning: " << warning << '\n';
  }

  const int n = game.num_players();
  const RegretReport full =
      RegretForAllAgents(game, trajectory.profiles, Subsequence::kFull);
  const CceGapReport full_gap = CceGap(game, trajectory.profiles);
  bool any_failure = false;
  for (int i = 0; i < n; ++i) {
    ReportRow row{horizon, i, "full", full.per_agent_regret[i],
                  full.best_response_action[i], full_gap.per_agent_gap[i],
                  std::nullopt, "n/a"};
    if (config.dynamics == DynamicsKind::kExactCmwu &&
        trajectory.solver_converged) {
      row.bound = ExactCmwuRegretBound(game, i, trajectory.etas[i], horizon,
                                       config.tolerance);
      row.status = Status(row.regret <= *row.bound);
    }
    any_failure |= row.status == "fail";
    outcome.rows.push_back(row);
  }
  if (config.dynamics == DynamicsKind::kCmwu) {
    const auto anchors = trajectory.AnchorProfiles();
    const RegretReport anchor =
        RegretForAllAgents(game, anchors, Subsequence::kAnchors);
    const CceGapReport anchor_gap = CceGap(game, anchors);
    const bool defaults =
        trajectory.block_length == DefaultBlockLength(horizon) &&
        std::all_of(trajectory.etas.begin(), trajectory.etas.end(),
                    [&](double eta) { return eta == default_eta; });
    for (int i = 0; i < n; ++i) {
      ReportRow row{horizon, i, "anchors", anchor.per_agent_regret[i],
                    anchor.best_response_action[i],
                    anchor_gap.per_agent_gap[i], std::nullopt, "n/a"};
      if (defaults) {
        row.bound = AnchorRegretBound(game);
        row.status = Status(row.regret <= *row.bound);
      }
      any_failure |= row.status == "fail";
      outcome.rows.push_back(row);
    }
    for (int i = 0; i < n; ++i) {
      ReportRow row{horizon, i, "leader", LeaderRegret(game, trajectory, i),
                    0, std::nullopt, std::nullopt, "n/a"};
      std::vector<PayoffVector> payoffs;
      std::vector<MixedStrategy> leaders;
      for (std::size_t tau = 0; tau < anchors.size(); ++tau) {
        payoffs.push_back(ComputePayoffVector(game, i, anchors[tau]));
        leaders.push_back(trajectory.z_snapshots[tau][i]);
      }
      row.best_action = SequenceRegret(payoffs, leaders).best_response_action;
      if (trajectory.etas[i] > 0.0) {
        row.bound = LeaderRegretBound(game, trajectory.etas[i]);
        row.status = Status(row.regret <= *row.bound);
      }
      any_failure |= row.status == "fail";
      outcome.rows.push_back(row);
    }
  }

  const auto header = RunHeader(config, trajectory);
  const std::string ext = Extension(config.format);
  const auto trajectory_path = dir / ("trajectory" + ext);
  const auto report_path = dir / ("report" + ext);
  if (config.format == ExportFormat::kCsv) {
    WriteFile(trajectory_path, TrajectoryToCsv(game, trajectory));
    WriteFile(report_path, ReportToCsv(header, outcome.rows));
  } else {
    WriteFile(trajectory_path, TrajectoryToJson(game, trajectory));
    WriteFile(report_path, ReportToJson(header, outcome.rows));
  }
  outcome.artifacts = {trajectory_path.string(), report_path.string()};

  for (const auto& row : outcome.rows) {
    log << row.subsequence << " agent " << row.agent << ": regret "
        << Short(row.regret);
    if (row.gap) log << ", gap " << Short(*row.gap);
    if (row.bound) log << ", bound " << Short(*row.bound);
    log << " [" << row.status << "]\n";
  }
  log << "wrote " << trajectory_path.string() << " and "
      << report_path.string() << '\n';

  if (!trajectory.solver_converged && !config.allow_nonconverged) {
    log << "error: fixed-point solver did not converge "
           "(pass --allow-nonconverged to accept)\n";
    outcome.exit_code = kExitNotConverged;
  } else if (any_failure) {
    outcome.exit_code = kExitCheckFailed;
  }
  return outcome;
}

RatesOutcome CmdRates(const ExperimentConfig& config, std::ostream& log) {
  if (config.horizons.size() < 3) {
    throw UsageError("rates needs at least three --T values");
  }
  const NormalFormGame game = LoadGame(config);
  const std::filesystem::path dir = PrepareOutDir(config);
  // Validates ordering before any work starts.
  for (std::size_t h = 0; h < config.horizons.size(); ++h) {
    if (config.horizons[h] < 2 ||
        (h > 0 && config.horizons[h] <= config.horizons[h - 1])) {
      throw UsageError("--T values must be >= 2 and strictly increasing");
    }
  }

  std::vector<std::future<RateRow>> cmwu_rows;
  std::vector<std::future<RateRow>> mwu_rows;
  for (int horizon : config.horizons) {
    for (auto [kind, sink] :
         {std::pair{DynamicsKind::kCmwu, &cmwu_rows},
          std::pair{DynamicsKind::kMwuBaseline, &mwu_rows}}) {
      sink->push_back(std::async(std::launch::async, [&game, horizon, kind] {
        const std::vector<int> single = {horizon};
        return RateSummary(game, single, kind).front();
      }));
    }
  }

  RatesOutcome outcome;
  outcome.cmwu_bound = AnchorRegretBound(game);
  bool any_failure = false;
  for (std::size_t h = 0; h < config.horizons.size(); ++h) {
    const RateRow cmwu = cmwu_rows[h].get();
    const RateRow mwu = mwu_rows[h].get();
    outcome.rows.push_back({config.horizons[h], cmwu.gap, cmwu.normalized,
                            mwu.gap, mwu.normalized,
                            BaselineStepSize(game, config.horizons[h])});
    any_failure |= cmwu.normalized > outcome.cmwu_bound;
  }

  const std::string ext = Extension(config.format);
  const auto path = dir / ("rates" + ext);
  if (config.format == ExportFormat::kCsv) {
    std::ostringstream out;
    out << "# cmwu-rates v1\n# game=" << config.game << '\n';
    if (config.seed) out << "# seed=" << *config.seed << '\n';
    out << "# cmwu_bound=" << FormatDouble(outcome.cmwu_bound) << '\n'
        << "T,log2_T,cmwu_gap,cmwu_normalized,cmwu_status,mwu_eta,mwu_gap,"
           "mwu_normalized\n";
    for (const auto& row : outcome.rows) {
      out << row.horizon << ',' << FormatDouble(std::log2(row.horizon)) << ','
          << FormatDouble(row.cmwu_gap) << ','
          << FormatDouble(row.cmwu_normalized) << ','
          << Status(row.cmwu_normalized <= outcome.cmwu_bound) << ','
          << FormatDouble(row.mwu_eta) << ',' << FormatDouble(row.mwu_gap)
          << ',' << FormatDouble(row.mwu_normalized) << '\n';
    }
    WriteFile(path, out.str());
  } else {
    json doc;
    doc["format"] = "cmwu-rates";
    doc["version"] = 1;
    doc["game"] = config.game;
    if (config.seed) doc["seed"] = *config.seed;
    doc["cmwu_bound"] = outcome.cmwu_bound;
    json rows = json::array();
    for (const auto& row : outcome.rows) {
      rows.push_back({{"T", row.horizon},
                      {"log2_T", std::log2(row.horizon)},
                      {"cmwu_gap", row.cmwu_gap},
                      {"cmwu_normalized", row.cmwu_normalized},
                      {"cmwu_status",
                       Status(row.cmwu_normalized <= outcome.cmwu_bound)},
                      {"mwu_eta", row.mwu_eta},
                      {"mwu_gap", row.mwu_gap},
                      {"mwu_normalized", row.mwu_normalized}});
    }
    doc["rows"] = std::move(rows);
    WriteFile(path, doc.dump(1) + "\n");
  }

  log << "T        cmwu_gap     cmwu*T/log2T  mwu_gap      mwu*sqrt(T)\n";
  for (const auto& row : outcome.rows) {
    char line[128];
    std::snprintf(line, sizeof(line), "%-8d %-12.6g %-13.6g %-12.6g %.6g\n",
                  row.horizon, row.cmwu_gap, row.cmwu_normalized, row.mwu_gap,
                  row.mwu_normalized);
    log << line;
  }
  log << "cmwu normalized bound 12nV ln m = " << Short(outcome.cmwu_bound)
      << "\nwrote " << path.string() << '\n';
  outcome.exit_code = any_failure ? kExitCheckFailed : kExitOk;
  return outcome;
}

VerifyOutcome CmdVerify(const ExperimentConfig& config, std::ostream& log) {
  const std::uint64_t seed = config.seed.value_or(0);
  const FixedPointSettings settings = SolverSettings(config);
  if (config.eta && settings.mode == ContractionMode::kStrict) {
    // Strict mode must reject a step size that cannot contract in the
    // largest battery game (n = 3, V <= 1).
    if (*config.eta * 2.0 >= 1.0) {
      throw ConfigError(
          "--eta breaks the contraction condition for the verify battery; "
          "pass --lenient-contraction to run anyway");
    }
  }
  const std::optional<double> eta = config.eta;
  auto lipschitz = std::async(std::launch::async, VerifyLipschitz, seed + 1);
  auto contraction =
      std::async(std::launch::async, VerifyContraction, seed + 2, eta);
  auto fixed_point =
      std::async(std::launch::async, VerifyFixedPoint, seed + 3, config);
  auto dynamics = std::async(std::launch::async, VerifyDynamics, seed + 4, eta);
  auto cce = std::async(std::launch::async, VerifyCceIdentity, seed + 5);
  auto utility = std::async(std::launch::async, VerifyUtilityIdentity, seed + 6);

  VerifyOutcome outcome;
  outcome.properties.push_back(lipschitz.get());
  outcome.properties.push_back(contraction.get());
  for (auto& p : fixed_point.get()) outcome.properties.push_back(std::move(p));
  for (auto& p : dynamics.get()) outcome.properties.push_back(std::move(p));
  outcome.properties.push_back(cce.get());
  outcome.properties.push_back(utility.get());

  bool failed = false;
  bool nonconverged = false;
  log << "property,status,cases,worst_margin,detail\n";
  for (const auto& p : outcome.properties) {
    log << p.name << ',' << p.status << ',' << p.cases << ','
        << FormatDouble(p.worst_margin) << ',' << p.detail << '\n';
    failed |= p.status == "fail";
    nonconverged |= p.status == "nonconverged";
  }
  if (failed) {
    outcome.exit_code = kExitCheckFailed;
  } else if (nonconverged && !config.allow_nonconverged) {
    outcome.exit_code = kExitNotConverged;
  }
  return outcome;
}

int Main(int argc, const char* const* argv, std::ostream& out,
         std::ostream& err) {
  CLI::App app{"Clairvoyant multiplicative-weights dynamics for normal-form "
               "games"};
  app.require_subcommand(1);
  Flags flags;
  auto* run = app.add_subcommand("run", "simulate one horizon and report");
  auto* rates = app.add_subcommand("rates", "CCE-gap table over horizons");
  auto* verify = app.add_subcommand("verify", "seeded property batteries");
  AddCommonFlags(*run, flags, true);
  AddCommonFlags(*rates, flags, true);
  AddCommonFlags(*verify, flags, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    const ExperimentConfig config = ToConfig(flags);
    if (run->parsed()) return CmdRun(config, out).exit_code;
    if (rates->parsed()) return CmdRates(config, out).exit_code;
    return CmdVerify(config, out).exit_code;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
}

}  // namespace cmwu::harness
