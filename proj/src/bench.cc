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

#include "rrce/bench.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <thread>
#include <tuple>

#ifndef RRCE_VERSION_STRING
#define RRCE_VERSION_STRING "unknown"
#endif

namespace rrce {
namespace {

using Clock = std::chrono::steady_clock;

double Seconds(Clock::time_point from, Clock::time_point to) {
  return std::chrono::duration<double>(to - from).count();
}

std::string FormatDouble(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

std::string CsvField(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void WriteRow(std::ofstream& out, const std::vector<std::string>& fields) {
  for (std::size_t k = 0; k < fields.size(); ++k) {
    if (k > 0) out << ',';
    out << CsvField(fields[k]);
  }
  out << "\r\n";
}

std::ofstream OpenForWrite(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  return out;
}

void CheckWritten(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw Error("failed writing " + path.string());
}

void FillMetrics(const Objective& objective, AlgorithmResult* r) {
  const std::span<const double> c(r->costs.data(), static_cast<std::size_t>(r->costs.size()));
  r->objective = EvaluateObjective(objective, r->costs);
  r->avg_cost = AvgCost(c);
  r->gini = Gini(c);
}

AlgorithmResult RunAlgorithm(Algorithm algorithm, const Game& game,
                             const BenchConfig& config, std::uint64_t seed) {
  AlgorithmResult r;
  r.algorithm = algorithm;
  r.game_fingerprint = game.Fingerprint();
  const Objective objective = FairnessThreshold{config.fairness_delta};
  try {
    switch (algorithm) {
      case Algorithm::kNash: {
        DenseAllocationGuard guard;
        const auto t0 = Clock::now();
        const NashPoint point = FindFirstNash(game, config.nash, DeriveSeed(seed, {1}));
        r.costs = CostOfProfile(game, point.profile);
        r.num_equilibria = 1;
        r.solver_time_s = r.total_time_s = Seconds(t0, Clock::now());
        break;
      }
      case Algorithm::kCe: {
        if (game.joint_action_count() > config.ce_cap) {
          throw CapExceeded("CE", game.joint_action_count(), config.ce_cap);
        }
        CeOptions options;
        options.ce_cap = config.ce_cap;
        const CeSolution sol = SolveCeOptimal(game, objective, options);
        r.costs = sol.costs;
        r.solver_time_s = sol.solver_time_s;
        r.total_time_s = sol.total_time_s;
        break;
      }
      case Algorithm::kRandomRrce:
      case Algorithm::kBruteRrce: {
        DenseAllocationGuard guard;
        const auto t0 = Clock::now();
        const NashSet nash =
            algorithm == Algorithm::kRandomRrce
                ? FindNashRandom(game, config.nash, DeriveSeed(seed, {2}))
                : EnumeratePureNash(game, config.enumeration_cap);
        const double search_time = Seconds(t0, Clock::now());
        if (nash.empty()) throw NoEquilibriumFound("no pure equilibrium exists");
        const RrceSolution sol = SolveRrce(game, nash, objective);
        r.costs = sol.costs;
        r.num_equilibria = nash.size();
        r.solver_time_s = search_time + sol.solver_time_s;
        r.total_time_s = Seconds(t0, Clock::now());
        break;
      }
    }
    FillMetrics(objective, &r);
  } catch (const CapExceeded& e) {
    r.status = TrialStatus::kCapExceeded;
    r.message = e.what();
  } catch (const NoEquilibriumFound& e) {
    r.status = TrialStatus::kNoEquilibriumFound;
    r.message = e.what();
  } catch (const SolverFailure& e) {
    r.status = TrialStatus::kSolverFailure;
    r.message = e.what();
  }
  return r;
}

}  // namespace

std::string ToString(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::kNash: return "nash";
    case Algorithm::kCe: return "ce";
    case Algorithm::kRandomRrce: return "rrce-random";
    case Algorithm::kBruteRrce: return "rrce-brute";
  }
  return "unknown";
}

Algorithm ParseAlgorithm(const std::string& name) {
  for (Algorithm a : {Algorithm::kNash, Algorithm::kCe, Algorithm::kRandomRrce,
                      Algorithm::kBruteRrce}) {
    if (ToString(a) == name) return a;
  }
  throw InvalidArgument("unknown algorithm '" + name + "'");
}

std::string ToString(TrialStatus status) {
  switch (status) {
    case TrialStatus::kSolved: return "Solved";
    case TrialStatus::kCapExceeded: return "CapExceeded";
    case TrialStatus::kNoEquilibriumFound: return "NoEquilibriumFound";
    case TrialStatus::kSolverFailure: return "SolverFailure";
  }
  return "Unknown";
}

std::vector<Setting> Grid(int n_lo, int n_hi, int r_lo, int r_hi) {
  if (n_lo < 2 || n_hi < n_lo || r_lo < 1 || r_hi < r_lo) {
    throw InvalidArgument("grid ranges must satisfy 2 <= n_lo <= n_hi, 1 <= r_lo <= r_hi");
  }
  std::vector<Setting> grid;
  for (int n = n_lo; n <= n_hi; ++n) {
    for (int r = r_lo; r <= r_hi; ++r) grid.push_back({n, r});
  }
  return grid;
}

std::vector<Setting> DefaultGrid() { return Grid(2, 7, 1, 3); }

const AlgorithmResult* TrialRecord::Find(Algorithm algorithm) const {
  for (const AlgorithmResult& r : results) {
    if (r.algorithm == algorithm) return &r;
  }
  return nullptr;
}

double AvgCost(std::span<const double> costs) {
  if (costs.empty()) throw InvalidArgument("average of an empty cost vector");
  double sum = 0.0;
  for (double c : costs) sum += c;
  return sum / static_cast<double>(costs.size());
}

double Gini(std::span<const double> costs) {
  const double ac = AvgCost(costs);
  if (ac == 0.0) return 0.0;
  double pairs = 0.0;
  for (double ci : costs) {
    for (double cj : costs) pairs += std::abs(ci - cj);
  }
  const double n = static_cast<double>(costs.size());
  return pairs / (2.0 * ac * n * n);
}

std::uint64_t TrialSeed(std::uint64_t base_seed, const Setting& setting, int trial) {
  return DeriveSeed(base_seed, {static_cast<std::uint64_t>(setting.num_queues),
                                static_cast<std::uint64_t>(setting.runways),
                                static_cast<std::uint64_t>(trial)});
}

TrialRecord RunTrial(const Setting& setting, int trial, std::uint64_t seed,
                     const BenchConfig& config) {
  TrialRecord record;
  record.setting = setting;
  record.trial = trial;
  record.seed = seed;
  Rng rate_rng(DeriveSeed(seed, {0}));
  record.rates = SampleRates(setting.num_queues, rate_rng, config.rate_low, config.rate_high);
  AtmConfig atm;
  atm.num_queues = setting.num_queues;
  atm.runways = setting.runways;
  atm.rates = record.rates;
  atm.rho = config.rho;
  atm.delta = config.delta;
  const Game game = BuildQueueGame(atm);
  for (Algorithm algorithm : config.algorithms) {
    record.results.push_back(RunAlgorithm(algorithm, game, config, seed));
  }
  return record;
}

Dataset MonteCarlo(const std::vector<Setting>& settings, int trials_per_setting,
                   std::uint64_t base_seed, const BenchConfig& config, int threads) {
  if (settings.empty()) throw InvalidArgument("no settings to run");
  if (trials_per_setting < 1) throw InvalidArgument("trials per setting must be >= 1");
  Dataset data;
  data.config = config;
  data.base_seed = base_seed;
  data.trials_per_setting = trials_per_setting;
  data.settings = settings;
  const std::size_t jobs = settings.size() * static_cast<std::size_t>(trials_per_setting);
  data.records.resize(jobs);
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t job = next++; job < jobs; job = next++) {
      const Setting& s = settings[job / trials_per_setting];
      const int trial = static_cast<int>(job % trials_per_setting);
      data.records[job] = RunTrial(s, trial, TrialSeed(base_seed, s, trial), config);
    }
  };
  const int workers = std::max(1, std::min<int>(threads, static_cast<int>(jobs)));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
  }
  return data;
}

void EmitCsv(const Dataset& dataset, const std::filesystem::path& path,
             const CsvOptions& options) {
  if (dataset.records.empty()) throw InvalidArgument("empty dataset");
  std::ofstream out = OpenForWrite(path);
  WriteRow(out, {"n", "r", "m", "joint_actions", "trial", "algorithm", "status", "J",
                 "AC", "GI", "solver_time_s", "total_time_s", "seed"});
  for (const TrialRecord& rec : dataset.records) {
    for (const AlgorithmResult& r : rec.results) {
      const bool ok = r.solved();
      const bool timed = ok && !options.mask_timing;
      WriteRow(out, {std::to_string(rec.setting.num_queues),
                     std::to_string(rec.setting.runways),
                     std::to_string(rec.setting.num_actions()),
                     std::to_string(rec.setting.joint_actions()),
                     std::to_string(rec.trial),
                     ToString(r.algorithm),
                     ToString(r.status),
                     ok ? FormatDouble(r.objective) : "",
                     ok ? FormatDouble(r.avg_cost) : "",
                     ok ? FormatDouble(r.gini) : "",
                     timed ? FormatDouble(r.solver_time_s) : "",
                     timed ? FormatDouble(r.total_time_s) : "",
                     std::to_string(rec.seed)});
    }
  }
  CheckWritten(out, path);
}

double Quantile(std::vector<double> values, double p) {
  if (values.empty()) throw InvalidArgument("quantile of an empty sample");
  if (!(p >= 0.0 && p <= 1.0)) throw InvalidArgument("quantile level outside [0, 1]");
  std::sort(values.begin(), values.end());
  const double h = (static_cast<double>(values.size()) - 1.0) * p;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, values.size() - 1);
  return values[lo] + (h - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

void EmitPlotData(const Dataset& dataset, const std::filesystem::path& dir) {
  if (dataset.records.empty()) throw InvalidArgument("empty dataset");
  std::filesystem::create_directories(dir);
  // (joint_actions, n, r, algorithm index) -> solved records
  using Key = std::tuple<std::uint64_t, int, int, int>;
  std::map<Key, std::vector<const AlgorithmResult*>> groups;
  std::map<Key, std::size_t> attempted;
  for (const TrialRecord& rec : dataset.records) {
    for (std::size_t k = 0; k < rec.results.size(); ++k) {
      const AlgorithmResult& r = rec.results[k];
      const Key key{rec.setting.joint_actions(), rec.setting.num_queues,
                    rec.setting.runways, static_cast<int>(r.algorithm)};
      ++attempted[key];
      auto& bucket = groups[key];
      if (r.solved()) bucket.push_back(&r);
    }
  }
  auto stats = [](const std::vector<const AlgorithmResult*>& rs, auto field) {
    std::vector<std::string> out;
    if (rs.empty()) return std::vector<std::string>{"", "", ""};
    std::vector<double> v;
    for (const AlgorithmResult* r : rs) v.push_back(field(*r));
    out.push_back(FormatDouble(Quantile(v, 0.5)));
    out.push_back(FormatDouble(Quantile(v, 0.25)));
    out.push_back(FormatDouble(Quantile(v, 0.75)));
    return out;
  };

  const std::filesystem::path time_path = dir / "plot_time.csv";
  std::ofstream time_out = OpenForWrite(time_path);
  WriteRow(time_out, {"joint_actions", "n", "r", "algorithm", "solved", "attempted",
                      "solver_time_median", "solver_time_q1", "solver_time_q3",
                      "total_time_median", "total_time_q1", "total_time_q3"});
  for (const auto& [key, rs] : groups) {
    const auto& [joint, n, r, alg] = key;
    std::vector<std::string> row = {std::to_string(joint), std::to_string(n),
                                    std::to_string(r), ToString(static_cast<Algorithm>(alg)),
                                    std::to_string(rs.size()),
                                    std::to_string(attempted[key])};
    for (const auto& s : stats(rs, [](const AlgorithmResult& a) { return a.solver_time_s; })) {
      row.push_back(s);
    }
    for (const auto& s : stats(rs, [](const AlgorithmResult& a) { return a.total_time_s; })) {
      row.push_back(s);
    }
    WriteRow(time_out, row);
  }
  CheckWritten(time_out, time_path);

  // Quality figure keyed by (n, r).
  using QKey = std::tuple<int, int, int>;
  std::map<QKey, Key> by_setting;
  for (const auto& [key, rs] : groups) {
    by_setting[{std::get<1>(key), std::get<2>(key), std::get<3>(key)}] = key;
  }
  const std::filesystem::path quality_path = dir / "plot_quality.csv";
  std::ofstream quality_out = OpenForWrite(quality_path);
  WriteRow(quality_out, {"n", "r", "algorithm", "solved", "attempted", "gi_median",
                         "gi_q1", "gi_q3", "ac_median", "ac_q1", "ac_q3"});
  for (const auto& [qkey, key] : by_setting) {
    const auto& rs = groups[key];
    std::vector<std::string> row = {std::to_string(std::get<0>(qkey)),
                                    std::to_string(std::get<1>(qkey)),
                                    ToString(static_cast<Algorithm>(std::get<2>(qkey))),
                                    std::to_string(rs.size()),
                                    std::to_string(attempted[key])};
    for (const auto& s : stats(rs, [](const AlgorithmResult& a) { return a.gini; })) {
      row.push_back(s);
    }
    for (const auto& s : stats(rs, [](const AlgorithmResult& a) { return a.avg_cost; })) {
      row.push_back(s);
    }
    WriteRow(quality_out, row);
  }
  CheckWritten(quality_out, quality_path);
}

double LogLogSlope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw InvalidArgument("slope fit needs at least two paired points");
  }
  double mx = 0.0, my = 0.0;
  const double k = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) throw InvalidArgument("log of a non-positive value");
    mx += std::log(x[i]);
    my += std::log(y[i]);
  }
  mx /= k;
  my /= k;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = std::log(x[i]) - mx;
    sxy += dx * (std::log(y[i]) - my);
    sxx += dx * dx;
  }
  if (sxx == 0.0) throw InvalidArgument("slope fit needs distinct x values");
  return sxy / sxx;
}

std::string VersionString() { return RRCE_VERSION_STRING; }

}  // namespace rrce
