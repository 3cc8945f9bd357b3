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

#include <filesystem>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "rrce/errors.h"
#include "rrce/io.h"
#include "test_util.h"

namespace rrce {
namespace {

using nlohmann::json;

TEST_CASE("game json round trip") {
  Rng rng(211);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + trial % 3;
    const int m = 2 + trial % 3;
    const Game game = testing::RandomGame(n, m, rng, -10.0, 10.0, trial % 2 == 0);
    const Game back = GameFromJson(GameToJson(game));
    CHECK(back == game);
    CHECK(back.Fingerprint() == game.Fingerprint());
  }
}

TEST_CASE("game json accepts nested and flat matrices") {
  const std::string text = R"({"n": 2, "m": 2, "costs": [
      {"i": 0, "j": 1, "matrix": [[500, 0], [5, 5]]},
      {"i": 1, "j": 0, "matrix": [500, 0, 5, 5]}]})";
  const Game game = GameFromJson(text);
  CHECK(game.cost(0, 1)(0, 0) == 500.0);
  CHECK(game.cost(0, 1)(1, 0) == 5.0);
  CHECK(game.cost(1, 0) == game.cost(0, 1));

  CHECK_THROWS_AS(GameFromJson(R"({"n": 3, "m": 2, "costs": [
      {"i": 2, "j": 0, "matrix": [1, 2, 3, 4]}]})"),
                  Error);
}

TEST_CASE("malformed game json is rejected") {
  const std::vector<std::string> bad = {
      "not json",
      "[1, 2]",
      R"({"m": 2, "costs": []})",
      R"({"n": 1, "m": 2, "costs": []})",
      R"({"n": 2, "m": 2, "costs": [{"i": 0, "j": 1, "matrix": [1, 2, 3]}]})",
      R"({"n": 2, "m": 2, "costs": [{"i": 0, "j": 1, "matrix": [[1, 2], [3]]}]})",
      R"({"n": 2, "m": 2, "costs": [{"i": 0, "j": 1, "matrix": ["a", 2, 3, 4]}]})",
      R"({"n": 2, "m": 2, "costs": [{"i": 0, "j": 1}]})",
      R"({"n": 2, "m": 2, "costs": {}})",
  };
  for (const std::string& text : bad) {
    CAPTURE(text);
    CHECK_THROWS_AS(GameFromJson(text), Error);
  }
  CHECK_THROWS_AS(
      GameFromJson(R"({"n": 2, "m": 2, "costs": [{"i": 0, "j": 0, "matrix": [1, 2, 3, 4]}]})"),
      Error);
  CHECK_THROWS_AS(
      GameFromJson(R"({"n": 2, "m": 2, "costs": [{"i": 0, "j": 5, "matrix": [1, 2, 3, 4]}]})"),
      Error);
}

TEST_CASE("scenarios") {
  const AtmConfig explicit_rates = ResolveScenario(
      ScenarioFromJson(R"({"n": 3, "r": 2, "rho": 4, "delta": 400, "rates": [1, 1.5, 0.7]})"));
  CHECK(explicit_rates.num_queues == 3);
  CHECK(explicit_rates.runways == 2);
  CHECK(explicit_rates.rho == 4.0);
  CHECK(explicit_rates.delta == 400.0);
  CHECK(explicit_rates.rates == std::vector<double>{1.0, 1.5, 0.7});

  const AtmConfig sampled = ResolveScenario(
      ScenarioFromJson(R"({"n": 4, "r": 1, "rates": {"seed": 7, "low": 1, "high": 3}})"));
  Rng rng(7);
  CHECK(sampled.rates == SampleRates(4, rng, 1.0, 3.0));
  CHECK(sampled.rho == kDefaultYieldPenalty);

  const AtmConfig unit = ResolveScenario(ScenarioFromJson(R"({"n": 2, "r": 1})"));
  CHECK(unit.rates == std::vector<double>{1.0, 1.0});

  const AtmConfig back = ResolveScenario(ScenarioFromJson(ScenarioToJson(explicit_rates)));
  CHECK(back.rates == explicit_rates.rates);
  CHECK(back.rho == explicit_rates.rho);
  CHECK(BuildQueueGame(back) == BuildQueueGame(explicit_rates));

  CHECK_THROWS_AS(ResolveScenario(ScenarioFromJson(R"({"n": 2})")), InvalidConfig);
  CHECK_THROWS_AS(ResolveScenario(ScenarioFromJson(R"({"n": 2, "r": 1, "rates": [1]})")),
                  InvalidConfig);
  CHECK_THROWS_AS(ResolveScenario(ScenarioFromJson(R"({"n": 2, "r": 1, "rates": [1, -1]})")),
                  InvalidConfig);
  CHECK_THROWS_AS(ScenarioFromJson(R"({"n": 2, "r": 1, "rates": 3})"), InvalidArgument);
  CHECK_THROWS_AS(ScenarioFromJson(R"({"n": "two"})"), InvalidArgument);
}

TEST_CASE("bench config round trip") {
  BenchConfig config;
  config.rho = 3.0;
  config.delta = 300.0;
  config.fairness_delta = 2.5;
  config.nash.restarts = 4;
  config.nash.tol = 1e-8;
  config.ce_cap = 64;
  config.algorithms = {Algorithm::kCe, Algorithm::kBruteRrce};
  const BenchConfig back = BenchConfigFromJson(BenchConfigToJson(config));
  CHECK(back.rho == 3.0);
  CHECK(back.delta == 300.0);
  CHECK(back.fairness_delta == 2.5);
  CHECK(back.nash.restarts == 4);
  CHECK(back.nash.tol == 1e-8);
  CHECK(back.ce_cap == 64);
  CHECK(back.algorithms == config.algorithms);

  const BenchConfig partial = BenchConfigFromJson(R"({"restarts": 2})");
  CHECK(partial.nash.restarts == 2);
  CHECK(partial.rho == kDefaultYieldPenalty);
  CHECK(partial.algorithms.size() == 4);
  CHECK_THROWS_AS(BenchConfigFromJson(R"({"algorithms": ["simplex"]})"), InvalidArgument);
  CHECK_THROWS_AS(BenchConfigFromJson(R"({"restarts": "many"})"), InvalidArgument);
}

TEST_CASE("solution document") {
  SolutionReport report;
  report.algorithm = "rrce-brute";
  report.objective = FairnessThreshold{2.0};
  report.value = 5.0;
  report.costs = Eigen::Vector2d(5.0, 0.0);
  report.gamma = std::vector<double>{0.0, 1.0};
  report.num_equilibria = 2;
  report.equilibria = {{1, 0, 0, 1}, {0, 1, 1, 0}};
  report.seed = 3;
  const json doc = json::parse(SolutionToJson(report));
  CHECK(doc["algorithm"] == "rrce-brute");
  CHECK(doc["objective"]["kind"] == "fairness");
  CHECK(doc["objective"]["delta"] == 2.0);
  CHECK(doc["J"] == 5.0);
  CHECK(doc["costs"] == json::array({5.0, 0.0}));
  CHECK(doc["gamma"].size() == 2);
  CHECK(doc["equilibria"].size() == 2);
  CHECK(!doc.contains("z"));

  report.objective = SumOfCosts{};
  report.gamma.reset();
  report.z = std::vector<double>{0.0, 0.5, 0.5, 0.0};
  const json ce = json::parse(SolutionToJson(report));
  CHECK(ce["objective"]["kind"] == "sum");
  CHECK(ce["z"].size() == 4);
  CHECK(!ce.contains("gamma"));
}

TEST_CASE("manifest lists every trial seed and fingerprint") {
  const Dataset data = MonteCarlo(Grid(2, 2, 1, 2), 2, 17, BenchConfig{});
  const json doc = json::parse(ManifestToJson(data, {2, true, {"results.csv"}}));
  CHECK(doc["base_seed"] == 17);
  CHECK(doc["trials_per_setting"] == 2);
  CHECK(doc["settings"].size() == 2);
  REQUIRE(doc["trials"].size() == 4);
  for (std::size_t k = 0; k < 4; ++k) {
    const TrialRecord& rec = data.records[k];
    CHECK(doc["trials"][k]["seed"] == rec.seed);
    CHECK(doc["trials"][k]["rates"].get<std::vector<double>>() == rec.rates);
    CHECK(doc["trials"][k]["game_fingerprints"].size() == rec.results.size());
  }
  CHECK(doc["threads"] == 2);
  CHECK(doc["mask_timing"] == true);
  CHECK(doc["files"] == json::array({"results.csv"}));
  CHECK(doc["version"] == VersionString());
  CHECK(BenchConfigFromJson(doc["config"].dump()).nash.restarts == data.config.nash.restarts);
}

TEST_CASE("text files") {
  const auto path = std::filesystem::temp_directory_path() / "rrce_io_test.txt";
  WriteTextFile(path, "a\r\nb");
  CHECK(ReadTextFile(path) == "a\r\nb");
  std::filesystem::remove(path);
  CHECK_THROWS_AS(ReadTextFile(path), InvalidArgument);
}

}  // namespace
}  // namespace rrce
