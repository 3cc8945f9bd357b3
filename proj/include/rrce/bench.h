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

// Monte Carlo comparison of Nash, CE, Random-RRCE and Brute-RRCE on runway
// queue games.

#ifndef RRCE_BENCH_H_
#define RRCE_BENCH_H_

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "rrce/atm.h"
#include "rrce/equilibria.h"
#include "rrce/nash.h"

namespace rrce {

enum class Algorithm { kNash, kCe, kRandomRrce, kBruteRrce };

std::string ToString(Algorithm algorithm);
// Accepts "nash", "ce", "rrce-random", "rrce-brute".
Algorithm ParseAlgorithm(const std::string& name);

enum class TrialStatus { kSolved, kCapExceeded, kNoEquilibriumFound, kSolverFailure };

std::string ToString(TrialStatus status);

struct Setting {
  int num_queues = 2;
  int runways = 1;

  int num_actions() const { return 1 << runways; }
  std::uint64_t joint_actions() const {
    return JointActionCount(num_queues, num_actions());
  }
};

// n in 2..7 and r in 1..3, n-major.
std::vector<Setting> DefaultGrid();
std::vector<Setting> Grid(int n_lo, int n_hi, int r_lo, int r_hi);

struct BenchConfig {
  double rho = kDefaultYieldPenalty;
  double delta = kDefaultCollisionPenalty;
  double fairness_delta = kDefaultFairnessThreshold;
  double rate_low = kDefaultRateLow;
  double rate_high = kDefaultRateHigh;
  NashSearchOptions nash = {.restarts = 10};
  std::uint64_t ce_cap = kDefaultCeCap;
  std::uint64_t enumeration_cap = kDefaultEnumerationCap;
  std::vector<Algorithm> algorithms = {Algorithm::kNash, Algorithm::kCe,
                                       Algorithm::kRandomRrce, Algorithm::kBruteRrce};
};

struct AlgorithmResult {
  Algorithm algorithm = Algorithm::kNash;
  TrialStatus status = TrialStatus::kSolved;
  std::string message;
  Eigen::VectorXd costs;
  double objective = 0.0;
  double avg_cost = 0.0;
  double gini = 0.0;
  double solver_time_s = 0.0;
  double total_time_s = 0.0;
  std::size_t num_equilibria = 0;    // RRCE hull size
  std::uint64_t game_fingerprint = 0;  // of the game this algorithm consumed

  bool solved() const { return status == TrialStatus::kSolved; }
};

struct TrialRecord {
  Setting setting;
  int trial = 0;
  std::uint64_t seed = 0;
  std::vector<double> rates;
  std::vector<AlgorithmResult> results;

  const AlgorithmResult* Find(Algorithm algorithm) const;
};

// AC = mean cost.
double AvgCost(std::span<const double> costs);

// GI = sum_{i,j} |c_i - c_j| / (2 * AC * n^2); 0 when AC = 0.
double Gini(std::span<const double> costs);

std::uint64_t TrialSeed(std::uint64_t base_seed, const Setting& setting, int trial);

TrialRecord RunTrial(const Setting& setting, int trial, std::uint64_t seed,
                     const BenchConfig& config);

struct Dataset {
  BenchConfig config;
  std::uint64_t base_seed = 0;
  int trials_per_setting = 0;
  std::vector<Setting> settings;
  std::vector<TrialRecord> records;  // setting-major, then trial
};

// Trials run on `threads` workers; results do not depend on the count.
Dataset MonteCarlo(const std::vector<Setting>& settings, int trials_per_setting,
                   std::uint64_t base_seed, const BenchConfig& config,
                   int threads = 1);

struct CsvOptions {
  // Leave timing cells empty so files are comparable byte for byte.
  bool mask_timing = false;
};

inline constexpr int kCsvColumns = 13;

// One row per (trial, algorithm).
void EmitCsv(const Dataset& dataset, const std::filesystem::path& path,
             const CsvOptions& options = {});

// plot_time.csv (by joint action count) and plot_quality.csv (by n, r).
void EmitPlotData(const Dataset& dataset, const std::filesystem::path& dir);

// Type-7 quantile (linear interpolation between order statistics).
double Quantile(std::vector<double> values, double p);

// Least-squares slope of log(y) against log(x).
double LogLogSlope(std::span<const double> x, std::span<const double> y);

std::string VersionString();

}  // namespace rrce

#endif  // RRCE_BENCH_H_
