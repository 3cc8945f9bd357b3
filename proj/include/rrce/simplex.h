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

// Dense two-phase tableau simplex.
//
//   minimize    c^T v
//   subject to  A v  = b
//               G v <= h
//               v_j >= lower_j   (lower_j may be -infinity)
//
// Phase I minimizes the sum of artificials over rows that have no usable
// slack; phase II optimizes the real objective with artificials barred from
// re-entering. Pricing takes the most negative reduced cost and falls back to
// Bland's rule (smallest eligible index) after a run of degenerate pivots, so
// the method cannot cycle. Ratio-test ties go to the smallest basic index.
// Inequality right-hand sides are relaxed by a small deterministic amount
// while pivoting; the unperturbed values are restored on the final basis and
// any leftover infeasibility is removed with dual simplex pivots. The final
// basis is re-solved with an LU factorization to recover accurate primal
// values and row duals.

#ifndef RRCE_SIMPLEX_H_
#define RRCE_SIMPLEX_H_

#include <limits>
#include <string>

#include <Eigen/Core>

namespace rrce {

inline constexpr double kNoLowerBound = -std::numeric_limits<double>::infinity();

struct LinearProgram {
  Eigen::VectorXd objective;
  Eigen::MatrixXd eq_matrix;
  Eigen::VectorXd eq_rhs;
  Eigen::MatrixXd ineq_matrix;
  Eigen::VectorXd ineq_rhs;
  Eigen::VectorXd lower;

  // k variables, zero objective, lower bounds 0, no rows.
  static LinearProgram WithVariables(int num_vars);

  int num_vars() const { return static_cast<int>(objective.size()); }
  int num_eq() const { return static_cast<int>(eq_matrix.rows()); }
  int num_ineq() const { return static_cast<int>(ineq_matrix.rows()); }

  void AddEquality(const Eigen::RowVectorXd& row, double rhs);
  void AddInequality(const Eigen::RowVectorXd& row, double rhs);
  // Appends a block of rows at once.
  void AddEqualities(const Eigen::MatrixXd& rows, const Eigen::VectorXd& rhs);
  void AddInequalities(const Eigen::MatrixXd& rows, const Eigen::VectorXd& rhs);

  // Throws InvalidArgument on inconsistent dimensions or non-finite data.
  void Validate() const;
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded, kIterationLimit };

std::string ToString(LpStatus status);

struct LpSolution {
  LpStatus status = LpStatus::kIterationLimit;
  Eigen::VectorXd x;
  double objective = 0.0;
  // Row multipliers. For a minimization, inequality duals are <= 0 and the
  // dual objective is b^T eq_duals + h^T ineq_duals (+ bound terms).
  Eigen::VectorXd eq_duals;
  Eigen::VectorXd ineq_duals;
  long iterations = 0;
};

struct SimplexOptions {
  long max_iterations = 2'000'000;
  double pivot_tol = 1e-9;
  double optimality_tol = 1e-9;
  double feasibility_tol = 1e-8;
  // Relative right-hand-side perturbation on inequality rows; 0 disables.
  // Removed again before the solution is reported.
  double perturbation = 1e-7;
  // Consecutive degenerate pivots before pricing switches from the most
  // negative reduced cost to Bland's rule.
  int degenerate_streak = 50;
};

LpSolution SimplexSolve(const LinearProgram& lp, const SimplexOptions& options = {});

// Largest violation of A v = b, G v <= h and the bounds at v.
double PrimalInfeasibility(const LinearProgram& lp, const Eigen::VectorXd& v);

// c^T v minus the dual objective; zero at an optimal primal/dual pair.
double DualityGap(const LinearProgram& lp, const LpSolution& solution);

// Largest violation of dual feasibility (reduced costs of bounded variables
// >= 0, of free variables = 0, inequality duals <= 0).
double DualInfeasibility(const LinearProgram& lp, const LpSolution& solution);

}  // namespace rrce

#endif  // RRCE_SIMPLEX_H_
