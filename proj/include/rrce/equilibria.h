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

// Optimal correlated equilibria over the dense joint-action space, and
// reduced-rank correlated equilibria over the convex hull of Nash points.
//
// A distribution z is a correlated equilibrium when, for every player i and
// every pair (recommended a*, deviation a'),
//
//   sum_{a : a_i = a*} z_a sum_{j != i} (C^{ij}[a*, a_j] - C^{ij}[a', a_j]) <= 0,
//
// i.e. following the recommendation is never worse than swapping in a' while
// the others keep their recommended actions. Every Nash point is a CE and the
// CE set is convex, so any mixture of Nash product distributions is a CE. The
// RRCE solve only needs each Nash point's cost vector, never the tensor.

#ifndef RRCE_EQUILIBRIA_H_
#define RRCE_EQUILIBRIA_H_

#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "rrce/game.h"
#include "rrce/nash.h"
#include "rrce/objective.h"
#include "rrce/simplex.h"

namespace rrce {

inline constexpr std::uint64_t kDefaultCeCap = 1ULL << 12;

struct CeRowKey {
  int player = 0;
  int recommended = 0;
  int deviation = 0;
};

struct CeConstraintSystem {
  int num_players = 0;
  int num_actions = 0;
  std::vector<CeRowKey> keys;
  // One row per key over the m^n flat joint-action columns; row . z <= 0.
  Eigen::MatrixXd rationality;

  // Rationality rows plus the normalization row.
  int num_rows() const { return static_cast<int>(keys.size()) + 1; }
};

CeConstraintSystem AssembleCeConstraints(const Game& game,
                                         std::uint64_t ce_cap = kDefaultCeCap);

// Largest rationality-row value row . z; <= tol certifies a CE. Mixtures are
// densified.
double VerifyCe(const Game& game, const JointDistribution& z,
                std::uint64_t dense_cap = kDefaultDenseCap);

// Same quantity for a mixture, evaluated per component in closed form:
// for a product distribution the row (i, a*, a') equals
// x_i[a*] * (g_i[a*] - g_i[a']).
double MixtureCeViolation(const Game& game, const JointDistribution& z);

// n x m^n matrix mapping a dense z to the cost vector.
Eigen::MatrixXd DenseCostMap(const Game& game, std::uint64_t cap = kDefaultCeCap);

struct CeOptions {
  std::uint64_t ce_cap = kDefaultCeCap;
  SimplexOptions simplex;
};

struct CeSolution {
  JointDistribution z;
  Eigen::VectorXd costs;
  double objective = 0.0;
  double violation = 0.0;
  long iterations = 0;
  double solver_time_s = 0.0;
  double total_time_s = 0.0;
};

CeSolution SolveCeOptimal(const Game& game, const Objective& objective,
                          const CeOptions& options = {});

class MixtureWeights {
 public:
  explicit MixtureWeights(std::vector<double> gamma);
  const std::vector<double>& gamma() const { return gamma_; }
  std::size_t size() const { return gamma_.size(); }
  double operator[](std::size_t k) const { return gamma_[k]; }

 private:
  std::vector<double> gamma_;
};

struct RrceSolution {
  MixtureWeights weights;
  JointDistribution z;
  Eigen::VectorXd costs;
  double objective = 0.0;
  long iterations = 0;
  // Precomputation of the per-equilibrium cost vectors, then the mixture LP.
  double precompute_time_s = 0.0;
  double solver_time_s = 0.0;
  double total_time_s = 0.0;
};

RrceSolution SolveRrce(const Game& game, const NashSet& nash,
                       const Objective& objective,
                       const SimplexOptions& simplex = {});

struct ProblemSize {
  std::uint64_t nash_equations = 0;
  std::uint64_t ce_equations = 0;
};

// Linear-system sizes for interior-point solves: n(m+1) for the Nash
// complementarity problem and 2 m^n + 3 m^2 n + 1 for the CE program.
ProblemSize ProblemSizeReport(int num_players, int num_actions);

}  // namespace rrce

#endif  // RRCE_EQUILIBRIA_H_
