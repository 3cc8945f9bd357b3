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

// JSON documents: games, runway scenarios, solutions and bench manifests.
//
// Game:     {"n": 2, "m": 2, "costs": [{"i": 0, "j": 1, "matrix": [...]}, ...]}
//           matrix is row-major m*m, either flat or nested.
// Scenario: {"n": 3, "r": 2, "rho": 5, "delta": 500,
//            "rates": [1.0, 1.5, 0.7] | {"seed": 7, "low": 0.5, "high": 2.0}}
//
// Parse failures throw InvalidArgument.

#ifndef RRCE_IO_H_
#define RRCE_IO_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "rrce/atm.h"
#include "rrce/bench.h"
#include "rrce/game.h"
#include "rrce/objective.h"

namespace rrce {

std::string GameToJson(const Game& game);
Game GameFromJson(const std::string& text);

// Partial scenario; fields left unset keep their defaults.
struct Scenario {
  std::optional<int> num_queues;
  std::optional<int> runways;
  std::optional<double> rho;
  std::optional<double> delta;
  std::optional<std::vector<double>> rates;
  std::optional<std::uint64_t> rate_seed;
  std::optional<double> rate_low;
  std::optional<double> rate_high;
};

Scenario ScenarioFromJson(const std::string& text);

// Fills rates from the explicit list, else by sampling with rate_seed, else
// all ones. Throws InvalidConfig on missing n or r.
AtmConfig ResolveScenario(const Scenario& scenario);

std::string ScenarioToJson(const AtmConfig& config);

struct SolutionReport {
  std::string algorithm;
  Objective objective = FairnessThreshold{};
  double value = 0.0;  // J
  Eigen::VectorXd costs;
  std::optional<std::vector<double>> gamma;  // RRCE weights
  std::optional<std::vector<double>> z;      // dense CE distribution
  double violation = 0.0;
  double solver_time_s = 0.0;
  double total_time_s = 0.0;
  std::uint64_t seed = 0;
  std::size_t num_equilibria = 0;
  std::vector<std::vector<double>> equilibria;  // flattened profiles, RRCE only
};

std::string SolutionToJson(const SolutionReport& report);

std::string BenchConfigToJson(const BenchConfig& config);
// Keys as written by BenchConfigToJson; absent keys keep `base`.
BenchConfig BenchConfigFromJson(const std::string& text, BenchConfig base = {});

struct ManifestInfo {
  int threads = 1;
  bool mask_timing = false;
  std::vector<std::string> files;
};

std::string ManifestToJson(const Dataset& dataset, const ManifestInfo& info);

std::string ReadTextFile(const std::filesystem::path& path);
void WriteTextFile(const std::filesystem::path& path, const std::string& text);

}  // namespace rrce

#endif  // RRCE_IO_H_
