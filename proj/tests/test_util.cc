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

#include "test_util.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace rrce::testing {

Game RandomGame(int n, int m, Rng& rng, double lo, double hi, bool integers) {
  std::uniform_real_distribution<double> real(lo, hi);
  std::uniform_int_distribution<int> whole(static_cast<int>(lo), static_cast<int>(hi));
  std::vector<PairCost> pairs;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      Eigen::MatrixXd c(m, m);
      for (int a = 0; a < m; ++a) {
        for (int b = 0; b < m; ++b) c(a, b) = integers ? whole(rng) : real(rng);
      }
      pairs.push_back({i, j, c});
    }
  }
  return Game::FromPairs(n, m, std::move(pairs));
}

StrategyProfile RandomProfile(int n, int m, Rng& rng) {
  std::vector<Strategy> s;
  for (int i = 0; i < n; ++i) {
    const std::vector<double> p = RandomSimplex(m, rng);
    s.emplace_back(Eigen::Map<const Eigen::VectorXd>(p.data(), m));
  }
  return StrategyProfile(std::move(s));
}

std::vector<std::vector<int>> AllJointActions(int n, int m) {
  std::vector<std::vector<int>> out;
  std::vector<int> a(n, 0);
  while (true) {
    out.push_back(a);
    int i = n - 1;
    while (i >= 0 && a[i] == m - 1) a[i--] = 0;
    if (i < 0) break;
    ++a[i];
  }
  return out;
}

double OracleCost(const Game& game, int i, const std::vector<int>& a) {
  double c = 0.0;
  for (int j = 0; j < game.num_players(); ++j) {
    if (j != i) c += game.cost(i, j)(a[i], a[j]);
  }
  return c;
}

std::vector<double> OracleProduct(const StrategyProfile& profile) {
  std::vector<double> out;
  for (const auto& a : AllJointActions(profile.num_players(), profile.num_actions())) {
    double p = 1.0;
    for (int i = 0; i < profile.num_players(); ++i) p *= profile[i][a[i]];
    out.push_back(p);
  }
  return out;
}

std::vector<double> OracleExpectedCosts(const Game& game, const std::vector<double>& probs) {
  const int n = game.num_players();
  std::vector<double> c(n, 0.0);
  const auto joints = AllJointActions(n, game.num_actions());
  for (std::size_t k = 0; k < joints.size(); ++k) {
    for (int i = 0; i < n; ++i) c[i] += probs[k] * OracleCost(game, i, joints[k]);
  }
  return c;
}

std::vector<std::vector<int>> OraclePureNash(const Game& game) {
  std::vector<std::vector<int>> out;
  for (const auto& a : AllJointActions(game.num_players(), game.num_actions())) {
    bool stable = true;
    for (int i = 0; i < game.num_players() && stable; ++i) {
      const double own = OracleCost(game, i, a);
      for (int d = 0; d < game.num_actions(); ++d) {
        std::vector<int> b = a;
        b[i] = d;
        if (OracleCost(game, i, b) < own) {
          stable = false;
          break;
        }
      }
    }
    if (stable) out.push_back(a);
  }
  return out;
}

double OracleCeViolation(const Game& game, const std::vector<double>& probs) {
  const int n = game.num_players();
  const int m = game.num_actions();
  const auto joints = AllJointActions(n, m);
  double worst = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    for (int rec = 0; rec < m; ++rec) {
      for (int dev = 0; dev < m; ++dev) {
        if (dev == rec) continue;
        double gain = 0.0;
        for (std::size_t k = 0; k < joints.size(); ++k) {
          if (joints[k][i] != rec) continue;
          std::vector<int> b = joints[k];
          b[i] = dev;
          gain += probs[k] * (OracleCost(game, i, joints[k]) - OracleCost(game, i, b));
        }
        worst = std::max(worst, gain);
      }
    }
  }
  return worst;
}

double KahanSum(const std::vector<double>& v) {
  double sum = 0.0;
  double comp = 0.0;
  for (double x : v) {
    const double y = x - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  return sum;
}

std::vector<double> RandomSimplex(int k, Rng& rng) {
  std::exponential_distribution<double> exp(1.0);
  std::vector<double> p(k);
  double total = 0.0;
  for (double& v : p) total += (v = exp(rng));
  for (double& v : p) v /= total;
  return p;
}

}  // namespace rrce::testing
