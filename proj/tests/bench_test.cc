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

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "rrce/bench.h"
#include "test_util.h"

namespace rrce {
namespace {

namespace fs = std::filesystem;
using testing::KahanSum;

// Sorted-order form of the mean-difference index.
double SortedGini(std::vector<double> c) {
  std::sort(c.begin(), c.end());
  const double n = static_cast<double>(c.size());
  double weighted = 0.0;
  double total = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    weighted += (2.0 * (i + 1) - n - 1.0) * c[i];
    total += c[i];
  }
  return total == 0.0 ? 0.0 : weighted / (n * total);
}

// Linear interpolation between closest ranks, written from the definition.
double QuantileOracle(std::vector<double> v, double p) {
  std::sort(v.begin(), v.end());
  const double pos = p * (v.size() - 1);
  const std::size_t below = static_cast<std::size_t>(pos);
  if (below + 1 >= v.size()) return v.back();
  return v[below] * (1.0 - (pos - below)) + v[below + 1] * (pos - below);
}

std::vector<std::vector<std::string>> ReadCsv(const fs::path& path) {
  std::ifstream in(path);
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.push_back("");
    rows.push_back(cells);
  }
  return rows;
}

std::string Slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path TempDir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("rrce_bench_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

TEST_CASE("average cost") {
  CHECK(AvgCost(std::vector<double>{0.0, 5.0}) == 2.5);
  CHECK(AvgCost(std::vector<double>{5.0, 5.0, 5.0}) == 5.0);
  std::mt19937_64 rng(131);
  std::uniform_real_distribution<double> u(0.0, 1000.0);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> c(1 + trial % 50);
    for (double& v : c) v = u(rng);
    const double want = KahanSum(c) / c.size();
    CHECK(std::abs(AvgCost(c) - want) <= 1e-12 * want);
  }
  CHECK_THROWS_AS(AvgCost(std::vector<double>{}), InvalidArgument);
}

TEST_CASE("gini index") {
  CHECK(Gini(std::vector<double>{4.0, 4.0, 4.0}) == 0.0);
  CHECK(Gini(std::vector<double>{0.0, 7.0}) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(Gini(std::vector<double>{0.0, 0.0, 3.0}) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(Gini(std::vector<double>{0.0, 0.0}) == 0.0);
  std::mt19937_64 rng(137);
  std::uniform_real_distribution<double> u(0.0, 100.0);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> c(2 + trial % 10);
    for (double& v : c) v = u(rng);
    const double g = Gini(c);
    CHECK(g >= 0.0);
    CHECK(g <= 1.0);
    CHECK(g == doctest::Approx(SortedGini(c)).epsilon(1e-12));
  }
}

TEST_CASE("quantiles and slope") {
  CHECK(Quantile({1, 2, 3, 4}, 0.25) == doctest::Approx(1.75));
  CHECK(Quantile({1, 2, 3, 4}, 0.5) == doctest::Approx(2.5));
  CHECK(Quantile(std::vector<double>(50, 3.25), 0.5) == 3.25);
  CHECK(Quantile(std::vector<double>(50, 3.25), 0.75) == 3.25);
  std::mt19937_64 rng(139);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> v(1 + trial % 37);
    for (double& x : v) x = u(rng);
    for (double p : {0.0, 0.25, 0.5, 0.75, 1.0}) {
      CHECK(Quantile(v, p) == doctest::Approx(QuantileOracle(v, p)).epsilon(1e-12));
    }
  }
  CHECK_THROWS_AS(Quantile({}, 0.5), InvalidArgument);
  CHECK_THROWS_AS(Quantile({1.0}, 1.5), InvalidArgument);

  std::vector<double> x, y;
  for (double v : {4.0, 16.0, 64.0, 512.0}) {
    x.push_back(v);
    y.push_back(3.0 * v * v);
  }
  CHECK(LogLogSlope(x, y) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK_THROWS_AS(LogLogSlope(std::vector<double>{1.0}, std::vector<double>{1.0}),
                  InvalidArgument);
}

TEST_CASE("grid and seeds") {
  const std::vector<Setting> grid = DefaultGrid();
  CHECK(grid.size() == 18);
  std::uint64_t lo = ~0ULL, hi = 0;
  for (const Setting& s : grid) {
    lo = std::min(lo, s.joint_actions());
    hi = std::max(hi, s.joint_actions());
  }
  CHECK(lo == 4);
  CHECK(hi == (1ULL << 21));
  CHECK(Grid(2, 3, 1, 2).size() == 4);
  CHECK_THROWS_AS(Grid(3, 2, 1, 1), InvalidArgument);
  CHECK(TrialSeed(1, {2, 1}, 0) == TrialSeed(1, {2, 1}, 0));
  CHECK(TrialSeed(1, {2, 1}, 0) != TrialSeed(1, {2, 1}, 1));
  CHECK(TrialSeed(1, {2, 1}, 0) != TrialSeed(1, {1, 2}, 0));
  CHECK(TrialSeed(1, {2, 1}, 0) != TrialSeed(2, {2, 1}, 0));
  CHECK(ParseAlgorithm("rrce-brute") == Algorithm::kBruteRrce);
  CHECK_THROWS_AS(ParseAlgorithm("lemke"), InvalidArgument);
}

TEST_CASE("two player trial") {
  const BenchConfig config;
  const TrialRecord rec = RunTrial({2, 1}, 0, 99, config);
  Rng rng(DeriveSeed(99, {0}));
  CHECK(rec.rates == SampleRates(2, rng));
  REQUIRE(rec.results.size() == 4);
  for (const AlgorithmResult& r : rec.results) {
    REQUIRE(r.solved());
    CHECK(r.game_fingerprint == rec.results[0].game_fingerprint);
    CHECK(r.avg_cost >= 0.0);
    CHECK(r.gini >= 0.0);
    CHECK(r.gini <= 1.0);
    CHECK(r.solver_time_s >= 0.0);
    CHECK(r.total_time_s >= 0.0);
  }
  const double ce = rec.Find(Algorithm::kCe)->objective;
  CHECK(std::abs(rec.Find(Algorithm::kBruteRrce)->objective - ce) <= 1e-6);
  CHECK(std::abs(rec.Find(Algorithm::kRandomRrce)->objective - ce) <= 1e-6);
}

TEST_CASE("largest setting skips CE and stays rank-1 for RRCE") {
  const BenchConfig config;
  const std::uint64_t before = DenseAllocationCount();
  const TrialRecord rec = RunTrial({7, 3}, 0, 5, config);
  CHECK(DenseAllocationCount() == before);
  CHECK(rec.Find(Algorithm::kCe)->status == TrialStatus::kCapExceeded);
  CHECK(rec.Find(Algorithm::kNash)->solved());
  CHECK(rec.Find(Algorithm::kBruteRrce)->solved());
  CHECK(rec.Find(Algorithm::kRandomRrce)->solved());
  CHECK(rec.Find(Algorithm::kBruteRrce)->objective <=
        rec.Find(Algorithm::kRandomRrce)->objective + 1e-7);
}

TEST_CASE("results do not depend on the worker count") {
  BenchConfig config;
  const std::vector<Setting> grid = Grid(2, 3, 1, 2);
  const Dataset one = MonteCarlo(grid, 3, 7, config, 1);
  const Dataset three = MonteCarlo(grid, 3, 7, config, 3);
  REQUIRE(one.records.size() == 12);
  REQUIRE(three.records.size() == 12);
  for (std::size_t k = 0; k < one.records.size(); ++k) {
    CHECK(one.records[k].seed == three.records[k].seed);
    CHECK(one.records[k].rates == three.records[k].rates);
    for (std::size_t a = 0; a < one.records[k].results.size(); ++a) {
      const AlgorithmResult& x = one.records[k].results[a];
      const AlgorithmResult& y = three.records[k].results[a];
      CHECK(x.status == y.status);
      CHECK(x.objective == y.objective);
      CHECK(x.gini == y.gini);
      CHECK(x.num_equilibria == y.num_equilibria);
    }
  }

  const fs::path dir = TempDir("determinism");
  EmitCsv(one, dir / "a.csv", {true});
  EmitCsv(three, dir / "b.csv", {true});
  CHECK(Slurp(dir / "a.csv") == Slurp(dir / "b.csv"));
  fs::remove_all(dir);
}

TEST_CASE("csv layout") {
  BenchConfig config;
  config.ce_cap = 4;
  const Dataset data = MonteCarlo(Grid(2, 3, 1, 1), 2, 11, config);
  const fs::path dir = TempDir("layout");
  EmitCsv(data, dir / "results.csv");
  const auto rows = ReadCsv(dir / "results.csv");
  REQUIRE(rows.size() == 1 + 2 * 2 * 4);
  CHECK(rows[0] == std::vector<std::string>{"n", "r", "m", "joint_actions", "trial",
                                            "algorithm", "status", "J", "AC", "GI",
                                            "solver_time_s", "total_time_s", "seed"});
  int capped = 0;
  for (const auto& row : rows) {
    REQUIRE(row.size() == static_cast<std::size_t>(kCsvColumns));
    if (row[6] == "CapExceeded") {
      ++capped;
      for (int c = 7; c <= 11; ++c) CHECK(row[c].empty());
    }
  }
  CHECK(capped == 2);

  EmitPlotData(data, dir);
  const auto time_rows = ReadCsv(dir / "plot_time.csv");
  REQUIRE(time_rows.size() > 1);
  std::uint64_t last = 0;
  for (std::size_t k = 1; k < time_rows.size(); ++k) {
    const std::uint64_t joint = std::stoull(time_rows[k][0]);
    CHECK(joint >= last);
    last = joint;
  }
  CHECK_THROWS_AS(EmitCsv(Dataset{}, dir / "x.csv"), InvalidArgument);
  fs::remove_all(dir);
}

TEST_CASE("plot quartiles match the sort-based oracle") {
  const Dataset data = MonteCarlo(Grid(2, 2, 1, 2), 9, 13, BenchConfig{});
  const fs::path dir = TempDir("quartiles");
  EmitPlotData(data, dir);
  const auto rows = ReadCsv(dir / "plot_quality.csv");
  REQUIRE(rows.size() == 1 + 2 * 4);
  for (std::size_t k = 1; k < rows.size(); ++k) {
    const int n = std::stoi(rows[k][0]);
    const int r = std::stoi(rows[k][1]);
    const Algorithm alg = ParseAlgorithm(rows[k][2]);
    std::vector<double> gi, ac;
    for (const TrialRecord& rec : data.records) {
      if (rec.setting.num_queues != n || rec.setting.runways != r) continue;
      gi.push_back(rec.Find(alg)->gini);
      ac.push_back(rec.Find(alg)->avg_cost);
    }
    REQUIRE(gi.size() == 9);
    CHECK(std::stod(rows[k][5]) == doctest::Approx(QuantileOracle(gi, 0.5)).epsilon(1e-8));
    CHECK(std::stod(rows[k][6]) == doctest::Approx(QuantileOracle(gi, 0.25)).epsilon(1e-8));
    CHECK(std::stod(rows[k][7]) == doctest::Approx(QuantileOracle(gi, 0.75)).epsilon(1e-8));
    CHECK(std::stod(rows[k][8]) == doctest::Approx(QuantileOracle(ac, 0.5)).epsilon(1e-8));
  }
  fs::remove_all(dir);
}

}  // namespace
}  // namespace rrce
