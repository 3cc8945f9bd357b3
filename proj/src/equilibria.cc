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

#include "rrce/equilibria.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <utility>

namespace rrce {
namespace {

using Clock = std::chrono::steady_clock;

double Seconds(Clock::time_point from, Clock::time_point to) {
  return std::chrono::duration<double>(to - from).count();
}

void Increment(std::vector<int>& actions, int m) {
  for (int i = static_cast<int>(actions.size()) - 1; i >= 0; --i) {
    if (++actions[i] < m) return;
    actions[i] = 0;
  }
}

int RowIndex(int m, int player, int recommended, int deviation) {
  return player * m * (m - 1) + recommended * (m - 1) +
         (deviation < recommended ? deviation : deviation - 1);
}

// Pure-action payoffs g_i(a') = sum_{j != i} C^{ij}[a', a_j] at joint action a.
void PurePayoffs(const Game& game, int i, const std::vector<int>& actions,
                 Eigen::VectorXd* g) {
  g->setZero();
  for (int j = 0; j < game.num_players(); ++j) {
    if (j != i) *g += game.cost(i, j).col(actions[j]);
  }
}

// Calls visit(row, joint_index, coefficient) for every nonzero of the
// rationality system restricted to the joint actions where weight(a) != 0.
template <class Weight, class Visit>
void ForEachRationalityEntry(const Game& game, Weight&& weight, Visit&& visit) {
  const int n = game.num_players();
  const int m = game.num_actions();
  const std::uint64_t count = game.joint_action_count();
  std::vector<int> actions(n, 0);
  Eigen::VectorXd g(m);
  for (std::uint64_t a = 0; a < count; ++a, Increment(actions, m)) {
    const double w = weight(a);
    if (w == 0.0) continue;
    for (int i = 0; i < n; ++i) {
      PurePayoffs(game, i, actions, &g);
      const int rec = actions[i];
      for (int dev = 0; dev < m; ++dev) {
        if (dev == rec) continue;
        visit(RowIndex(m, i, rec, dev), a, w * (g[rec] - g[dev]));
      }
    }
  }
}

}  // namespace

CeConstraintSystem AssembleCeConstraints(const Game& game, std::uint64_t ce_cap) {
  const int n = game.num_players();
  const int m = game.num_actions();
  const std::uint64_t count = game.joint_action_count();
  CheckDenseAllocation(count, ce_cap, "AssembleCeConstraints");
  CeConstraintSystem sys;
  sys.num_players = n;
  sys.num_actions = m;
  for (int i = 0; i < n; ++i) {
    for (int rec = 0; rec < m; ++rec) {
      for (int dev = 0; dev < m; ++dev) {
        if (dev != rec) sys.keys.push_back({i, rec, dev});
      }
    }
  }
  sys.rationality = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(sys.keys.size()),
                                          static_cast<Eigen::Index>(count));
  ForEachRationalityEntry(
      game, [](std::uint64_t) { return 1.0; },
      [&sys](int row, std::uint64_t col, double v) {
        sys.rationality(row, static_cast<Eigen::Index>(col)) = v;
      });
  return sys;
}

double VerifyCe(const Game& game, const JointDistribution& z,
                std::uint64_t dense_cap) {
  if (z.num_players() != game.num_players() || z.num_actions() != game.num_actions()) {
    throw InvalidArgument("distribution shape does not match the game");
  }
  std::optional<JointDistribution> densified;
  if (z.is_dense()) {
    CheckDenseAllocation(game.joint_action_count(), dense_cap, "VerifyCe");
  } else {
    densified = Densify(z, dense_cap);
  }
  const std::vector<double>& probs = (densified ? *densified : z).dense().probs;
  const int m = game.num_actions();
  std::vector<double> rows(static_cast<std::size_t>(game.num_players()) * m * (m - 1), 0.0);
  ForEachRationalityEntry(
      game, [&probs](std::uint64_t a) { return probs[a]; },
      [&rows](int row, std::uint64_t, double v) { rows[row] += v; });
  return *std::max_element(rows.begin(), rows.end());
}

double MixtureCeViolation(const Game& game, const JointDistribution& z) {
  if (z.is_dense()) return VerifyCe(game, z);
  const int n = game.num_players();
  const int m = game.num_actions();
  std::vector<double> rows(static_cast<std::size_t>(n) * m * (m - 1), 0.0);
  const Rank1Mixture& mix = z.mixture();
  for (std::size_t k = 0; k < mix.points.size(); ++k) {
    if (mix.weights[k] == 0.0) continue;
    for (int i = 0; i < n; ++i) {
      const Eigen::VectorXd g = PayoffVector(game, i, mix.points[k]);
      const Eigen::VectorXd& x = mix.points[k][i].probs();
      for (int rec = 0; rec < m; ++rec) {
        for (int dev = 0; dev < m; ++dev) {
          if (dev == rec) continue;
          rows[RowIndex(m, i, rec, dev)] += mix.weights[k] * x[rec] * (g[rec] - g[dev]);
        }
      }
    }
  }
  return *std::max_element(rows.begin(), rows.end());
}

Eigen::MatrixXd DenseCostMap(const Game& game, std::uint64_t cap) {
  const int n = game.num_players();
  const std::uint64_t count = game.joint_action_count();
  CheckDenseAllocation(count, cap, "DenseCostMap");
  Eigen::MatrixXd map(n, static_cast<Eigen::Index>(count));
  std::vector<int> actions(n, 0);
  for (std::uint64_t a = 0; a < count; ++a, Increment(actions, game.num_actions())) {
    for (int i = 0; i < n; ++i) {
      map(i, static_cast<Eigen::Index>(a)) = game.PureCost(i, actions);
    }
  }
  return map;
}

CeSolution SolveCeOptimal(const Game& game, const Objective& objective,
                          const CeOptions& options) {
  const auto start = Clock::now();
  const std::uint64_t count = game.joint_action_count();
  if (count > options.ce_cap) {
    throw CapExceeded("SolveCeOptimal", count, options.ce_cap);
  }
  const auto joint = static_cast<int>(count);
  const CeConstraintSystem sys = AssembleCeConstraints(game, options.ce_cap);
  const Eigen::MatrixXd cost_map = DenseCostMap(game, options.ce_cap);
  EncodedObjective enc = EncodeObjective(objective, cost_map);
  LinearProgram& lp = enc.lp;
  const int total_vars = lp.num_vars();
  Eigen::MatrixXd rational = Eigen::MatrixXd::Zero(sys.rationality.rows(), total_vars);
  rational.leftCols(joint) = sys.rationality;
  lp.AddInequalities(rational, Eigen::VectorXd::Zero(sys.rationality.rows()));
  Eigen::RowVectorXd norm = Eigen::RowVectorXd::Zero(total_vars);
  norm.head(joint).setOnes();
  lp.AddEquality(norm, 1.0);

  const auto solve_start = Clock::now();
  const LpSolution sol = SimplexSolve(lp, options.simplex);
  const auto solve_end = Clock::now();
  if (sol.status != LpStatus::kOptimal) {
    throw SolverFailure("CE linear program returned " + ToString(sol.status) +
                        "; the CE set always contains the Nash equilibria");
  }
  std::vector<double> probs(sol.x.data(), sol.x.data() + joint);
  double total = 0.0;
  for (double& p : probs) {
    p = std::max(p, 0.0);
    total += p;
  }
  for (double& p : probs) p /= total;
  JointDistribution z = JointDistribution::Dense(game.num_players(),
                                                 game.num_actions(), std::move(probs));
  Eigen::VectorXd costs = cost_map * Eigen::Map<const Eigen::VectorXd>(
                                         z.dense().probs.data(), joint);
  const double violation = VerifyCe(game, z, std::max(options.ce_cap, count));
  const double value = EvaluateObjective(objective, costs);
  const auto end = Clock::now();
  return CeSolution{std::move(z),
                    std::move(costs),
                    value,
                    violation,
                    sol.iterations,
                    Seconds(solve_start, solve_end),
                    Seconds(start, end)};
}

MixtureWeights::MixtureWeights(std::vector<double> gamma) : gamma_(std::move(gamma)) {
  if (gamma_.empty()) throw InvalidArgument("mixture weights are empty");
  double sum = 0.0;
  for (double g : gamma_) {
    if (!std::isfinite(g) || g < 0.0) {
      throw InvalidArgument("mixture weight negative or non-finite");
    }
    sum += g;
  }
  if (std::abs(sum - 1.0) > kProbabilityTolerance) {
    throw InvalidArgument("mixture weights sum to " + std::to_string(sum));
  }
}

RrceSolution SolveRrce(const Game& game, const NashSet& nash,
                       const Objective& objective, const SimplexOptions& simplex) {
  const auto start = Clock::now();
  if (nash.empty()) throw EmptyNashSet("RRCE needs at least one Nash point");
  const int n = game.num_players();
  const int d = static_cast<int>(nash.size());
  ValidateObjective(objective, n);

  Eigen::MatrixXd cost_map(n, d);
  for (int k = 0; k < d; ++k) cost_map.col(k) = CostOfProfile(game, nash.points[k].profile);
  const auto solve_start = Clock::now();

  std::vector<double> gamma(d, 0.0);
  long iterations = 0;
  if (d == 1) {
    gamma[0] = 1.0;
  } else {
    EncodedObjective enc = EncodeObjective(objective, cost_map);
    Eigen::RowVectorXd norm = Eigen::RowVectorXd::Zero(enc.lp.num_vars());
    norm.head(d).setOnes();
    enc.lp.AddEquality(norm, 1.0);
    const LpSolution sol = SimplexSolve(enc.lp, simplex);
    if (sol.status != LpStatus::kOptimal) {
      throw SolverFailure("RRCE mixture program returned " + ToString(sol.status));
    }
    iterations = sol.iterations;
    double total = 0.0;
    for (int k = 0; k < d; ++k) {
      gamma[k] = std::max(sol.x[k], 0.0);
      total += gamma[k];
    }
    for (double& g : gamma) g /= total;
  }
  const auto solve_end = Clock::now();

  const Eigen::VectorXd costs =
      cost_map * Eigen::Map<const Eigen::VectorXd>(gamma.data(), d);
  MixtureWeights weights(gamma);
  JointDistribution z = JointDistribution::Mixture(nash.profiles(), std::move(gamma));
  const double value = EvaluateObjective(objective, costs);
  const auto end = Clock::now();
  return RrceSolution{std::move(weights),
                      std::move(z),
                      costs,
                      value,
                      iterations,
                      Seconds(start, solve_start),
                      Seconds(solve_start, solve_end),
                      Seconds(start, end)};
}

ProblemSize ProblemSizeReport(int num_players, int num_actions) {
  if (num_players < 1 || num_actions < 1) {
    throw InvalidArgument("problem size needs n >= 1 and m >= 1");
  }
  using U = std::uint64_t;
  constexpr U kMax = std::numeric_limits<U>::max();
  const U n = static_cast<U>(num_players);
  const U m = static_cast<U>(num_actions);
  auto mul = [](U a, U b) {
    if (a != 0 && b > kMax / a) throw Overflow("problem size overflows 64 bits");
    return a * b;
  };
  auto add = [](U a, U b) {
    if (b > kMax - a) throw Overflow("problem size overflows 64 bits");
    return a + b;
  };
  ProblemSize size;
  size.nash_equations = mul(n, add(m, 1));
  const U m_pow_n = JointActionCount(num_players, num_actions);
  size.ce_equations = add(add(mul(2, m_pow_n), mul(mul(3, mul(m, m)), n)), 1);
  return size;
}

}  // namespace rrce
