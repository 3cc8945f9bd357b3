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

#include "rrce/atm.h"

#include <cmath>

namespace rrce {

// Keeps m = 2^r and m^n well inside the dense-cap arithmetic.
constexpr int kMaxRunways = 16;

void AtmConfig::Validate() const {
  if (num_queues < 2) throw InvalidConfig("need at least 2 queues");
  if (runways < 1 || runways > kMaxRunways) {
    throw InvalidConfig("runway count must be in [1, " +
                        std::to_string(kMaxRunways) + "]");
  }
  if (static_cast<int>(rates.size()) != num_queues) {
    throw InvalidConfig("expected " + std::to_string(num_queues) + " rates, got " +
                        std::to_string(rates.size()));
  }
  for (double v : rates) {
    if (!std::isfinite(v) || v <= 0.0) throw InvalidConfig("rates must be > 0");
  }
  if (!std::isfinite(rho) || !std::isfinite(delta) || !(rho > 0.0) ||
      !(delta > rho)) {
    throw InvalidConfig("penalties must satisfy delta > rho > 0");
  }
}

std::string RunwayAction::ToString() const {
  std::string s = "(";
  for (std::size_t w = 0; w < occupies.size(); ++w) {
    if (w > 0) s += ",";
    s += occupies[w] ? "O" : "Y";
  }
  return s + ")";
}

bool Occupies(int action, int runway, int runways) {
  return ((action >> (runways - 1 - runway)) & 1) == 0;
}

std::vector<RunwayAction> RunwayActionSpace(int runways) {
  if (runways < 1 || runways > kMaxRunways) {
    throw InvalidConfig("runway count must be in [1, " +
                        std::to_string(kMaxRunways) + "]");
  }
  std::vector<RunwayAction> actions(static_cast<std::size_t>(1) << runways);
  for (int k = 0; k < static_cast<int>(actions.size()); ++k) {
    actions[k].occupies.resize(runways);
    for (int w = 0; w < runways; ++w) actions[k].occupies[w] = Occupies(k, w, runways);
  }
  return actions;
}

double RunwayPairCost(int a, int b, int runways, double rho, double delta) {
  double cost = 0.0;
  for (int w = 0; w < runways; ++w) {
    const bool mine = Occupies(a, w, runways);
    if (!mine) {
      cost += rho;
    } else if (Occupies(b, w, runways)) {
      cost += delta;
    }
  }
  return cost;
}

Game BuildQueueGame(const AtmConfig& config) {
  config.Validate();
  const int n = config.num_queues;
  const int m = config.num_actions();
  Eigen::MatrixXd unit(m, m);
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < m; ++b) {
      unit(a, b) = RunwayPairCost(a, b, config.runways, config.rho, config.delta);
    }
  }
  std::vector<PairCost> pairs;
  pairs.reserve(static_cast<std::size_t>(n) * (n - 1));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i != j) pairs.push_back({i, j, config.rates[i] * unit});
    }
  }
  return Game::FromPairs(n, m, std::move(pairs));
}

std::vector<double> SampleRates(int num_queues, Rng& rng, double low, double high) {
  if (!(low > 0.0) || !(high >= low) || !std::isfinite(high)) {
    throw InvalidConfig("rate range must satisfy 0 < low <= high");
  }
  std::vector<double> rates(num_queues);
  for (double& v : rates) v = low + (high - low) * UniformUnit(rng);
  return rates;
}

Game TwoPlayerSingleRunway(double delta, double rho) {
  AtmConfig config;
  config.num_queues = 2;
  config.runways = 1;
  config.rates = {1.0, 1.0};
  config.rho = rho;
  config.delta = delta;
  return BuildQueueGame(config);
}

}  // namespace rrce
