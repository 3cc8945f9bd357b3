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

// Nash equilibria of polymatrix games.
//
// Every point leaving this module carries a KKT certificate: with
// g_i = sum_{j != i} C^{ij} x_j, the multipliers mu_i = min_a g_i[a] and
// lambda_i = g_i - mu_i satisfy stationarity and dual feasibility exactly, so
// the only possible violation is complementarity, lambda_i^T x_i. That value,
// maximized over players, is the residual.

#ifndef RRCE_NASH_H_
#define RRCE_NASH_H_

#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "rrce/game.h"

namespace rrce {

struct KktCertificate {
  double residual = 0.0;
  std::vector<Eigen::VectorXd> lambda;  // per player, >= 0
  std::vector<double> mu;               // per player
};

struct NashPoint {
  StrategyProfile profile;
  double kkt_residual = 0.0;
  bool is_pure = false;
  std::vector<Eigen::VectorXd> lambda;
  std::vector<double> mu;
};

struct NashSet {
  std::vector<NashPoint> points;

  std::size_t size() const { return points.size(); }
  bool empty() const { return points.empty(); }
  std::vector<StrategyProfile> profiles() const;
};

struct NashSearchOptions {
  int restarts = 20;
  double tol = 1e-6;
  int max_iterations = 10000;
  double dedupe_tol = 1e-4;
  // Attempt an exact support solve every this many iterations.
  int polish_interval = 16;
};

inline constexpr std::uint64_t kDefaultEnumerationCap = 1ULL << 24;

// g[a] = sum_{j != i} (C^{ij} x_j)[a]: player i's expected cost of pure
// action a against the others.
Eigen::VectorXd PayoffVector(const Game& game, int player,
                             const StrategyProfile& profile);

KktCertificate KktResidual(const Game& game, const StrategyProfile& profile);

NashPoint MakeNashPoint(const Game& game, StrategyProfile profile);

// Damped best-response averaging from uniform-random starts, one independent
// sub-stream per restart. Returns every distinct certified point; throws
// NoEquilibriumFound if no restart converges.
NashSet FindNashRandom(const Game& game, const NashSearchOptions& options,
                       std::uint64_t seed);

// Runs restarts in order and returns the first certified point, or throws
// NoEquilibriumFound. Restart k uses the same sub-stream as in FindNashRandom.
NashPoint FindFirstNash(const Game& game, const NashSearchOptions& options,
                        std::uint64_t seed);

// One restart from a given start. Returns false if the budget ran out.
bool RunBestResponseDynamics(const Game& game, const StrategyProfile& start,
                             const NashSearchOptions& options, NashPoint* out);

// All pure equilibria, in flat joint-action order. Ties count as best
// responses.
NashSet EnumeratePureNash(const Game& game,
                          std::uint64_t enumeration_cap = kDefaultEnumerationCap);

// Greedy filter in input order: a point is dropped when a kept point lies
// strictly closer than `tol` in L-infinity distance.
NashSet DedupeEquilibria(std::vector<NashPoint> points, double tol);

}  // namespace rrce

#endif  // RRCE_NASH_H_
