// Copyright 2026 The RRCE Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "rrce/cli.h"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <ostream>

#include "CLI11.hpp"
#include "rrce/atm.h"
#include "rrce/bench.h"
#include "rrce/equilibria.h"
#include "rrce/io.h"
#include "rrce/nash.h"

namespace rrce {
namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

void CheckInputFile(const std::string& path) {
  if (!fs::is_regular_file(path)) throw InvalidArgument("no such file: " + path);
}

void CheckOutputPath(const std::string& path) {
  const fs::path parent = fs::path(path).parent_path();
  if (!parent.empty() && !fs::is_directory(parent)) {
    throw InvalidArgument("output directory does not exist: " + parent.string());
  }
}

struct SolveArgs {
  std::string game;
  std::string algo;
  std::string objective = "fairness";
  double delta = kDefaultFairnessThreshold;
  std::uint64_t seed = kDefaultSeed;
  std::string out;
  NashSearchOptions nash;
  std::uint64_t ce_cap = kDefaultCeCap;
  std::uint64_t enumeration_cap = kDefaultEnumerationCap;
};

int RunSolve(const SolveArgs& args, std::ostream& err) {
  CheckInputFile(args.game);
  CheckOutputPath(args.out);
  const Algorithm algorithm = ParseAlgorithm(args.algo);
  Objective objective = SumOfCosts{};
  if (args.objective == "fairness") {
    objective = FairnessThreshold{args.delta};
  } else if (args.objective != "sum") {
    throw InvalidArgument("unknown objective '" + args.objective + "'");
  }
  const Game game = GameFromJson(ReadTextFile(args.game));
  ValidateObjective(objective, game.num_players());

  const auto start = Clock::now();
  SolutionReport report;
  report.algorithm = ToString(algorithm);
  report.objective = objective;
  report.seed = args.seed;
  switch (algorithm) {
    case Algorithm::kNash: {
      DenseAllocationGuard guard;
      const NashPoint point = FindFirstNash(game, args.nash, args.seed);
      report.costs = CostOfProfile(game, point.profile);
      report.violation =
          MixtureCeViolation(game, JointDistribution::Mixture({point.profile}, {1.0}));
      report.solver_time_s = std::chrono::duration<double>(Clock::now() - start).count();
      break;
    }
    case Algorithm::kCe: {
      CeOptions options;
      options.ce_cap = args.ce_cap;
      const CeSolution sol = SolveCeOptimal(game, objective, options);
      report.costs = sol.costs;
      report.violation = sol.violation;
      report.z = sol.z.dense().probs;
      report.solver_time_s = sol.solver_time_s;
      break;
    }
    case Algorithm::kRandomRrce:
    case Algorithm::kBruteRrce: {
      DenseAllocationGuard guard;
      const NashSet nash = algorithm == Algorithm::kRandomRrce
                               ? FindNashRandom(game, args.nash, args.seed)
                               : EnumeratePureNash(game, args.enumeration_cap);
      const double search = std::chrono::duration<double>(Clock::now() - start).count();
      if (nash.empty()) throw NoEquilibriumFound("the game has no pure equilibrium");
      const RrceSolution sol = SolveRrce(game, nash, objective);
      report.costs = sol.costs;
      report.gamma = sol.weights.gamma();
      report.num_equilibria = nash.size();
      for (const NashPoint& p : nash.points) {
        std::vector<double> flat;
        for (const Strategy& s : p.profile.strategies()) {
          flat.insert(flat.end(), s.probs().data(), s.probs().data() + s.size());
        }
        report.equilibria.push_back(std::move(flat));
      }
      report.violation = MixtureCeViolation(game, sol.z);
      report.solver_time_s = search + sol.solver_time_s;
      break;
    }
  }
  report.value = EvaluateObjective(objective, report.costs);
  report.total_time_s = std::chrono::duration<double>(Clock::now() - start).count();
  WriteTextFile(args.out, SolutionToJson(report));
  err << report.algorithm << ": J = " << report.value << "\n";
  return kExitOk;
}

struct GenAtmArgs {
  std::optional<int> n;
  std::optional<int> r;
  std::optional<double> rho;
  std::optional<double> delta;
  std::vector<double> rates;
  std::optional<std::uint64_t> rate_seed;
  std::optional<double> rate_low;
  std::optional<double> rate_high;
  std::string scenario;
  std::string scenario_out;
  std::string out;
};

int RunGenAtm(const GenAtmArgs& args, std::ostream& err) {
  CheckOutputPath(args.out);
  if (!args.scenario_out.empty()) CheckOutputPath(args.scenario_out);
  Scenario s;
  if (!args.scenario.empty()) {
    CheckInputFile(args.scenario);
    s = ScenarioFromJson(ReadTextFile(args.scenario));
  }
  if (args.n) s.num_queues = args.n;
  if (args.r) s.runways = args.r;
  if (args.rho) s.rho = args.rho;
  if (args.delta) s.delta = args.delta;
  if (!args.rates.empty()) {
    s.rates = args.rates;
    s.rate_seed.reset();
  }
  if (args.rate_seed) {
    s.rate_seed = args.rate_seed;
    s.rates.reset();
  }
  if (args.rate_low) s.rate_low = args.rate_low;
  if (args.rate_high) s.rate_high = args.rate_high;
  const AtmConfig config = ResolveScenario(s);
  const Game game = BuildQueueGame(config);
  WriteTextFile(args.out, GameToJson(game));
  if (!args.scenario_out.empty()) WriteTextFile(args.scenario_out, ScenarioToJson(config));
  err << "wrote " << config.num_queues << "-queue, " << config.runways
      << "-runway game to " << args.out << "\n";
  return kExitOk;
}

struct BenchArgs {
  std::string grid = "default";
  std::string n_range;
  std::string r_range;
  int trials = 50;
  std::uint64_t seed = kDefaultSeed;
  std::string out_dir;
  int threads = 1;
  std::string config;
  std::optional<int> restarts;
  std::optional<double> fairness_delta;
  std::optional<double> rho;
  std::optional<double> delta;
  std::optional<std::uint64_t> ce_cap;
  std::vector<std::string> algos;
  bool mask_timing = false;
};

int RunBench(const BenchArgs& args, std::ostream& err) {
  if (args.out_dir.empty()) throw InvalidArgument("--out-dir is required");
  if (args.threads < 1) throw InvalidArgument("--threads must be >= 1");
  std::vector<Setting> settings;
  if (args.n_range.empty() && args.r_range.empty()) {
    if (args.grid != "default") throw InvalidArgument("unknown grid '" + args.grid + "'");
    settings = DefaultGrid();
  } else {
    const auto [nlo, nhi] = ParseRange(args.n_range.empty() ? "2..7" : args.n_range);
    const auto [rlo, rhi] = ParseRange(args.r_range.empty() ? "1..3" : args.r_range);
    settings = Grid(nlo, nhi, rlo, rhi);
  }
  BenchConfig config;
  if (!args.config.empty()) {
    CheckInputFile(args.config);
    config = BenchConfigFromJson(ReadTextFile(args.config), config);
  }
  if (args.restarts) config.nash.restarts = *args.restarts;
  if (args.fairness_delta) config.fairness_delta = *args.fairness_delta;
  if (args.rho) config.rho = *args.rho;
  if (args.delta) config.delta = *args.delta;
  if (args.ce_cap) config.ce_cap = *args.ce_cap;
  if (!args.algos.empty()) {
    config.algorithms.clear();
    for (const std::string& a : args.algos) config.algorithms.push_back(ParseAlgorithm(a));
  }
  if (config.nash.restarts < 1) throw InvalidArgument("restarts must be >= 1");

  fs::create_directories(args.out_dir);
  const Dataset data = MonteCarlo(settings, args.trials, args.seed, config, args.threads);
  const fs::path dir(args.out_dir);
  EmitCsv(data, dir / "results.csv", CsvOptions{args.mask_timing});
  EmitPlotData(data, dir);
  ManifestInfo info;
  info.threads = args.threads;
  info.mask_timing = args.mask_timing;
  info.files = {"results.csv", "plot_time.csv", "plot_quality.csv", "manifest.json"};
  WriteTextFile(dir / "manifest.json", ManifestToJson(data, info));
  err << "wrote " << data.records.size() << " trials to " << dir.string() << "\n";
  return kExitOk;
}

}  // namespace

std::pair<int, int> ParseRange(const std::string& text) {
  auto to_int = [&text](const std::string& s) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (s.empty() || used != s.size()) throw InvalidArgument("bad range '" + text + "'");
    return v;
  };
  const std::size_t dots = text.find("..");
  if (dots == std::string::npos) {
    const int v = to_int(text);
    return {v, v};
  }
  const int lo = to_int(text.substr(0, dots));
  const int hi = to_int(text.substr(dots + 2));
  if (hi < lo) throw InvalidArgument("empty range '" + text + "'");
  return {lo, hi};
}

int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Nash, correlated and reduced-rank correlated equilibria of polymatrix games",
               "rrce"};
  app.set_version_flag("--version", VersionString());
  app.require_subcommand(1);

  SolveArgs solve;
  CLI::App* solve_cmd = app.add_subcommand("solve", "Solve a game file");
  solve_cmd->add_option("--game", solve.game, "Game JSON")->required();
  solve_cmd->add_option("--algo", solve.algo, "nash | ce | rrce-random | rrce-brute")
      ->required()
      ->check(CLI::IsMember({"nash", "ce", "rrce-random", "rrce-brute"}));
  solve_cmd->add_option("--objective", solve.objective, "fairness | sum")
      ->capture_default_str()
      ->check(CLI::IsMember({"fairness", "sum"}));
  solve_cmd->add_option("--delta", solve.delta, "Fairness threshold")->capture_default_str();
  solve_cmd->add_option("--seed", solve.seed)->capture_default_str();
  solve_cmd->add_option("--out", solve.out, "Solution JSON")->required();
  solve_cmd->add_option("--restarts", solve.nash.restarts)->capture_default_str();
  solve_cmd->add_option("--tol", solve.nash.tol)->capture_default_str();
  solve_cmd->add_option("--max-iterations", solve.nash.max_iterations)->capture_default_str();
  solve_cmd->add_option("--ce-cap", solve.ce_cap)->capture_default_str();
  solve_cmd->add_option("--enum-cap", solve.enumeration_cap)->capture_default_str();

  GenAtmArgs gen;
  CLI::App* gen_cmd = app.add_subcommand("gen-atm", "Write a runway-queue game");
  gen_cmd->add_option("--n", gen.n, "Number of queues");
  gen_cmd->add_option("--r", gen.r, "Number of runways");
  gen_cmd->add_option("--rho", gen.rho, "Yield penalty");
  gen_cmd->add_option("--collision", gen.delta, "Collision penalty");
  CLI::Option* rates_opt = gen_cmd->add_option("--rates", gen.rates, "Arrival rates");
  gen_cmd->add_option("--rate-seed", gen.rate_seed, "Sample rates with this seed")
      ->excludes(rates_opt);
  gen_cmd->add_option("--rate-low", gen.rate_low);
  gen_cmd->add_option("--rate-high", gen.rate_high);
  gen_cmd->add_option("--scenario", gen.scenario, "Scenario JSON; flags override it");
  gen_cmd->add_option("--scenario-out", gen.scenario_out, "Write the resolved scenario");
  gen_cmd->add_option("--out", gen.out, "Game JSON")->required();

  BenchArgs bench;
  CLI::App* bench_cmd = app.add_subcommand("bench", "Run the Monte Carlo comparison");
  CLI::Option* grid_opt = bench_cmd->add_option("--grid", bench.grid)->capture_default_str();
  bench_cmd->add_option("--n-range", bench.n_range, "e.g. 2..7")->excludes(grid_opt);
  bench_cmd->add_option("--r-range", bench.r_range, "e.g. 1..3")->excludes(grid_opt);
  bench_cmd->add_option("--trials", bench.trials)->capture_default_str()->check(
      CLI::PositiveNumber);
  bench_cmd->add_option("--seed", bench.seed)->capture_default_str();
  bench_cmd->add_option("--out-dir", bench.out_dir)->required();
  bench_cmd->add_option("--threads", bench.threads)
      ->envname("RRCE_THREADS")
      ->capture_default_str();
  bench_cmd->add_option("--config", bench.config, "Bench config JSON; flags override it");
  bench_cmd->add_option("--restarts", bench.restarts);
  bench_cmd->add_option("--fairness-delta", bench.fairness_delta);
  bench_cmd->add_option("--rho", bench.rho);
  bench_cmd->add_option("--collision", bench.delta);
  bench_cmd->add_option("--ce-cap", bench.ce_cap);
  bench_cmd->add_option("--algos", bench.algos)
      ->check(CLI::IsMember({"nash", "ce", "rrce-random", "rrce-brute"}));
  bench_cmd->add_flag("--mask-timing", bench.mask_timing,
                      "Leave timing cells empty in results.csv");

  int size_n = 0;
  int size_m = 0;
  CLI::App* size_cmd = app.add_subcommand("size-report", "Equation counts for n, m");
  size_cmd->add_option("--n", size_n)->required();
  size_cmd->add_option("--m", size_m)->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << VersionString() << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitBadArguments;
  }

  try {
    if (solve_cmd->parsed()) return RunSolve(solve, err);
    if (gen_cmd->parsed()) return RunGenAtm(gen, err);
    if (bench_cmd->parsed()) return RunBench(bench, err);
    const ProblemSize size = ProblemSizeReport(size_n, size_m);
    out << "nash: " << size.nash_equations << ", ce: " << size.ce_equations << "\n";
    return kExitOk;
  } catch (const CapExceeded& e) {
    err << "error: " << e.what() << "\n";
    return kExitCapExceeded;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << "\n";
    return kExitBadArguments;
  } catch (const InvalidConfig& e) {
    err << "error: " << e.what() << "\n";
    return kExitBadArguments;
  } catch (const OutOfRange& e) {
    err << "error: " << e.what() << "\n";
    return kExitBadArguments;
  } catch (const Overflow& e) {
    err << "error: " << e.what() << "\n";
    return kExitBadArguments;
  } catch (const SolverFailure& e) {
    err << "error: " << e.what() << "\n";
    return kExitSolverFailure;
  } catch (const NoEquilibriumFound& e) {
    err << "error: " << e.what() << "\n";
    return kExitSolverFailure;
  } catch (const EmptyNashSet& e) {
    err << "error: " << e.what() << "\n";
    return kExitSolverFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
}

}  // namespace rrce
