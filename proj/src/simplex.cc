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

#include "rrce/simplex.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include <Eigen/Dense>

#include "rrce/errors.h"
#include "rrce/rng.h"

namespace rrce {
namespace {

using RowMajorMatrix =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Where an original variable lives in the standard-form column space.
struct VariableMap {
  int plus = -1;   // v = lower + u  or  v = u_plus - u_minus
  int minus = -1;  // only for free variables
};

class Tableau {
 public:
  Tableau(RowMajorMatrix a, Eigen::VectorXd b, std::vector<int> basis,
          const SimplexOptions& options)
      : rows_(static_cast<int>(a.rows())),
        cols_(static_cast<int>(a.cols())),
        basis_(std::move(basis)),
        options_(options) {
    t_.resize(rows_ + 1, cols_ + 1);
    t_.topLeftCorner(rows_, cols_) = a;
    t_.topRightCorner(rows_, 1) = b;
    t_.row(rows_).setZero();
  }

  // Sets the objective row to reduced costs of `cost` for the current basis.
  void SetObjective(const Eigen::VectorXd& cost) {
    auto obj = t_.row(rows_);
    obj.head(cols_) = cost.transpose();
    obj[cols_] = 0.0;
    for (int r = 0; r < rows_; ++r) {
      const double cb = cost[basis_[r]];
      if (cb != 0.0) obj -= cb * t_.row(r);
    }
  }

  void SetRhs(const Eigen::VectorXd& x_b) { t_.col(cols_).head(rows_) = x_b; }

  // Primal simplex over columns [0, limit).
  LpStatus Optimize(int limit, long* iterations) {
    int streak = 0;
    while (true) {
      if (*iterations >= options_.max_iterations) return LpStatus::kIterationLimit;
      const bool bland = streak >= options_.degenerate_streak;
      int entering = -1;
      double best = -options_.optimality_tol;
      for (int j = 0; j < limit; ++j) {
        const double d = t_(rows_, j);
        if (d < best) {
          entering = j;
          if (bland) break;
          best = d;
        }
      }
      if (entering < 0) return LpStatus::kOptimal;
      const int leaving = RatioTest(entering);
      if (leaving < 0) return LpStatus::kUnbounded;
      const bool degenerate = t_(leaving, cols_) <= options_.pivot_tol;
      Pivot(leaving, entering);
      ++*iterations;
      streak = degenerate ? streak + 1 : 0;
    }
  }

  // Dual simplex over columns [0, limit) from a dual feasible basis. Returns
  // kInfeasible when a negative row has no eligible entering column.
  LpStatus DualOptimize(int limit, long* iterations) {
    while (true) {
      if (*iterations >= options_.max_iterations) return LpStatus::kIterationLimit;
      int leaving = -1;
      double worst = -options_.feasibility_tol;
      for (int r = 0; r < rows_; ++r) {
        const double v = t_(r, cols_);
        if (v < worst || (leaving >= 0 && v == worst && basis_[r] < basis_[leaving])) {
          worst = v;
          leaving = r;
        }
      }
      if (leaving < 0) return LpStatus::kOptimal;
      int entering = -1;
      double best = std::numeric_limits<double>::infinity();
      for (int j = 0; j < limit; ++j) {
        const double alpha = t_(leaving, j);
        if (alpha >= -options_.pivot_tol) continue;
        const double ratio = std::max(t_(rows_, j), 0.0) / -alpha;
        if (ratio < best) {
          best = ratio;
          entering = j;
        }
      }
      if (entering < 0) return LpStatus::kInfeasible;
      Pivot(leaving, entering);
      ++*iterations;
    }
  }

  // Minimum ratio; ties go to the row whose basic variable has the smallest
  // index.
  int RatioTest(int col) const {
    double min_ratio = std::numeric_limits<double>::infinity();
    for (int r = 0; r < rows_; ++r) {
      const double coef = t_(r, col);
      if (coef > options_.pivot_tol) {
        min_ratio = std::min(min_ratio, std::max(t_(r, cols_), 0.0) / coef);
      }
    }
    if (std::isinf(min_ratio)) return -1;
    const double slack = 1e-12 * std::max(1.0, min_ratio);
    int best = -1;
    for (int r = 0; r < rows_; ++r) {
      const double coef = t_(r, col);
      if (coef <= options_.pivot_tol) continue;
      if (std::max(t_(r, cols_), 0.0) / coef <= min_ratio + slack &&
          (best < 0 || basis_[r] < basis_[best])) {
        best = r;
      }
    }
    return best;
  }

  void Pivot(int row, int col) {
    t_.row(row) /= t_(row, col);
    const Eigen::VectorXd factors = t_.col(col);
    for (int r = 0; r <= rows_; ++r) {
      if (r == row) continue;
      const double f = factors[r];
      if (f != 0.0) t_.row(r) -= f * t_.row(row);
    }
    basis_[row] = col;
  }

  double value() const { return -t_(rows_, cols_); }
  double coef(int r, int c) const { return t_(r, c); }
  double rhs(int r) const { return t_(r, cols_); }
  int rows() const { return rows_; }
  const std::vector<int>& basis() const { return basis_; }

 private:
  int rows_;
  int cols_;
  std::vector<int> basis_;
  SimplexOptions options_;
  RowMajorMatrix t_;
};

// Basic variable values B^{-1} b for the given basis; false if singular.
bool SolveBasis(const RowMajorMatrix& a, const std::vector<int>& basis,
                const Eigen::VectorXd& b, Eigen::PartialPivLU<Eigen::MatrixXd>* lu,
                Eigen::VectorXd* x_b) {
  const int rows = static_cast<int>(basis.size());
  Eigen::MatrixXd basis_matrix(rows, rows);
  for (int r = 0; r < rows; ++r) basis_matrix.col(r) = a.col(basis[r]);
  lu->compute(basis_matrix);
  *x_b = lu->solve(b);
  return x_b->allFinite() && (basis_matrix * *x_b - b).cwiseAbs().maxCoeff() <=
                                 1e-9 * std::max(1.0, b.cwiseAbs().maxCoeff());
}

}  // namespace

std::string ToString(LpStatus status) {
  switch (status) {
    case LpStatus::kOptimal: return "Optimal";
    case LpStatus::kInfeasible: return "Infeasible";
    case LpStatus::kUnbounded: return "Unbounded";
    case LpStatus::kIterationLimit: return "IterationLimit";
  }
  return "Unknown";
}

LinearProgram LinearProgram::WithVariables(int num_vars) {
  LinearProgram lp;
  lp.objective = Eigen::VectorXd::Zero(num_vars);
  lp.eq_matrix.resize(0, num_vars);
  lp.eq_rhs.resize(0);
  lp.ineq_matrix.resize(0, num_vars);
  lp.ineq_rhs.resize(0);
  lp.lower = Eigen::VectorXd::Zero(num_vars);
  return lp;
}

void LinearProgram::AddEquality(const Eigen::RowVectorXd& row, double rhs) {
  AddEqualities(row, Eigen::VectorXd::Constant(1, rhs));
}

void LinearProgram::AddInequality(const Eigen::RowVectorXd& row, double rhs) {
  AddInequalities(row, Eigen::VectorXd::Constant(1, rhs));
}

void LinearProgram::AddEqualities(const Eigen::MatrixXd& rows,
                                  const Eigen::VectorXd& rhs) {
  if (rows.cols() != num_vars() || rows.rows() != rhs.size()) {
    throw InvalidArgument("equality block has inconsistent dimensions");
  }
  const Eigen::Index old = eq_matrix.rows();
  eq_matrix.conservativeResize(old + rows.rows(), num_vars());
  eq_matrix.bottomRows(rows.rows()) = rows;
  eq_rhs.conservativeResize(old + rhs.size());
  eq_rhs.tail(rhs.size()) = rhs;
}

void LinearProgram::AddInequalities(const Eigen::MatrixXd& rows,
                                    const Eigen::VectorXd& rhs) {
  if (rows.cols() != num_vars() || rows.rows() != rhs.size()) {
    throw InvalidArgument("inequality block has inconsistent dimensions");
  }
  const Eigen::Index old = ineq_matrix.rows();
  ineq_matrix.conservativeResize(old + rows.rows(), num_vars());
  ineq_matrix.bottomRows(rows.rows()) = rows;
  ineq_rhs.conservativeResize(old + rhs.size());
  ineq_rhs.tail(rhs.size()) = rhs;
}

void LinearProgram::Validate() const {
  const int k = num_vars();
  if (lower.size() != k || eq_matrix.cols() != k || ineq_matrix.cols() != k ||
      eq_rhs.size() != eq_matrix.rows() || ineq_rhs.size() != ineq_matrix.rows()) {
    throw InvalidArgument("linear program has inconsistent dimensions");
  }
  if (!objective.allFinite() || !eq_matrix.allFinite() || !eq_rhs.allFinite() ||
      !ineq_matrix.allFinite() || !ineq_rhs.allFinite()) {
    throw InvalidArgument("linear program has non-finite coefficients");
  }
  for (int j = 0; j < k; ++j) {
    if (std::isnan(lower[j]) || lower[j] == std::numeric_limits<double>::infinity()) {
      throw InvalidArgument("invalid lower bound");
    }
  }
}

LpSolution SimplexSolve(const LinearProgram& lp, const SimplexOptions& options) {
  lp.Validate();
  const int k = lp.num_vars();
  const int n_eq = lp.num_eq();
  const int n_ineq = lp.num_ineq();
  const int rows = n_eq + n_ineq;

  // Standard form columns: structural (shifted / split) then slacks then
  // artificials.
  std::vector<VariableMap> vars(k);
  int num_struct = 0;
  for (int j = 0; j < k; ++j) {
    vars[j].plus = num_struct++;
    if (std::isinf(lp.lower[j])) vars[j].minus = num_struct++;
  }
  const int slack_begin = num_struct;
  const int num_base = num_struct + n_ineq;

  Eigen::MatrixXd a_base = Eigen::MatrixXd::Zero(rows, num_base);
  Eigen::VectorXd b(rows);
  Eigen::VectorXd shift = Eigen::VectorXd::Zero(k);
  for (int j = 0; j < k; ++j) {
    if (!std::isinf(lp.lower[j])) shift[j] = lp.lower[j];
  }
  auto place = [&](int r, const auto& src_row) {
    for (int j = 0; j < k; ++j) {
      const double v = src_row[j];
      if (v == 0.0) continue;
      a_base(r, vars[j].plus) = v;
      if (vars[j].minus >= 0) a_base(r, vars[j].minus) = -v;
    }
  };
  for (int r = 0; r < n_eq; ++r) {
    place(r, lp.eq_matrix.row(r));
    b[r] = lp.eq_rhs[r] - lp.eq_matrix.row(r).dot(shift);
  }
  for (int r = 0; r < n_ineq; ++r) {
    place(n_eq + r, lp.ineq_matrix.row(r));
    a_base(n_eq + r, slack_begin + r) = 1.0;
    b[n_eq + r] = lp.ineq_rhs[r] - lp.ineq_matrix.row(r).dot(shift);
  }

  // Row equilibration and sign normalization (b >= 0).
  Eigen::VectorXd row_factor(rows);
  for (int r = 0; r < rows; ++r) {
    double scale = a_base.row(r).cwiseAbs().maxCoeff();
    if (scale == 0.0) scale = 1.0;
    double f = 1.0 / scale;
    if (b[r] < 0.0) f = -f;
    a_base.row(r) *= f;
    b[r] *= f;
    row_factor[r] = f;
  }

  // Rows whose slack has coefficient +1 start with the slack basic.
  std::vector<int> basis(rows, -1);
  int num_art = 0;
  for (int r = 0; r < rows; ++r) {
    if (r >= n_eq && row_factor[r] > 0.0) {
      basis[r] = slack_begin + (r - n_eq);
    } else {
      ++num_art;
    }
  }
  const int cols = num_base + num_art;
  RowMajorMatrix a(rows, cols);
  a.setZero();
  a.leftCols(num_base) = a_base;
  // Slack columns were scaled with their rows; rescale so initial basic
  // slacks form an identity.
  for (int r = n_eq; r < rows; ++r) {
    if (row_factor[r] > 0.0) {
      const int s = slack_begin + (r - n_eq);
      const double v = a(r, s);
      a.col(s) /= v;
    }
  }
  int next_art = num_base;
  for (int r = 0; r < rows; ++r) {
    if (basis[r] < 0) {
      a(r, next_art) = 1.0;
      basis[r] = next_art++;
    }
  }
  const RowMajorMatrix a_std = a;

  // Relax rows whose slack starts basic so degenerate vertices split apart.
  Eigen::VectorXd b_work = b;
  if (options.perturbation > 0.0) {
    for (int r = n_eq; r < rows; ++r) {
      if (row_factor[r] <= 0.0) continue;
      const double u = static_cast<double>(MixBits(static_cast<std::uint64_t>(r)) >> 11) *
                       0x1.0p-53;
      b_work[r] += options.perturbation * (1.0 + u) * std::max(1.0, b[r]);
    }
  }

  LpSolution sol;
  Tableau tab(a, b_work, basis, options);

  if (num_art > 0) {
    Eigen::VectorXd phase1 = Eigen::VectorXd::Zero(cols);
    phase1.tail(num_art).setOnes();
    tab.SetObjective(phase1);
    const LpStatus s1 = tab.Optimize(cols, &sol.iterations);
    if (s1 == LpStatus::kIterationLimit) {
      sol.status = s1;
      return sol;
    }
    const double infeas_scale = std::max(1.0, b_work.cwiseAbs().maxCoeff());
    if (tab.value() > options.feasibility_tol * infeas_scale) {
      sol.status = LpStatus::kInfeasible;
      return sol;
    }
    // Drive artificials at zero level out of the basis where possible. Rows
    // where every real column is zero are redundant and keep the artificial.
    for (int r = 0; r < rows; ++r) {
      if (tab.basis()[r] < num_base) continue;
      int best = -1;
      double best_abs = options.pivot_tol;
      for (int j = 0; j < num_base; ++j) {
        const double v = std::abs(tab.coef(r, j));
        if (v > best_abs) {
          best_abs = v;
          best = j;
        }
      }
      if (best >= 0) tab.Pivot(r, best);
    }
  }

  Eigen::VectorXd phase2 = Eigen::VectorXd::Zero(cols);
  for (int j = 0; j < k; ++j) {
    phase2[vars[j].plus] = lp.objective[j];
    if (vars[j].minus >= 0) phase2[vars[j].minus] = -lp.objective[j];
  }
  tab.SetObjective(phase2);
  sol.status = tab.Optimize(num_base, &sol.iterations);
  if (sol.status != LpStatus::kOptimal) return sol;

  // Back to the true right-hand side, then restore primal feasibility and
  // re-check optimality until the basis settles.
  Eigen::PartialPivLU<Eigen::MatrixXd> lu;
  Eigen::VectorXd x_b(rows);
  for (int round = 0; rows > 0; ++round) {
    if (!SolveBasis(a_std, tab.basis(), b, &lu, &x_b)) {
      for (int r = 0; r < rows; ++r) x_b[r] = tab.rhs(r);
    }
    if (round == 4) break;
    tab.SetRhs(x_b);
    tab.SetObjective(phase2);
    bool changed = false;
    if (x_b.minCoeff() < -options.feasibility_tol) {
      sol.status = tab.DualOptimize(num_base, &sol.iterations);
      if (sol.status != LpStatus::kOptimal) return sol;
      changed = true;
    }
    const long before = sol.iterations;
    sol.status = tab.Optimize(num_base, &sol.iterations);
    if (sol.status != LpStatus::kOptimal) return sol;
    if (!changed && sol.iterations == before) break;
  }
  const std::vector<int>& final_basis = tab.basis();
  Eigen::VectorXd y = Eigen::VectorXd::Zero(rows);
  if (rows > 0) {
    Eigen::VectorXd cost_b(rows);
    for (int r = 0; r < rows; ++r) cost_b[r] = phase2[final_basis[r]];
    y = lu.transpose().solve(cost_b);
    if (!y.allFinite()) y.setZero();
  }
  Eigen::VectorXd u = Eigen::VectorXd::Zero(cols);
  for (int r = 0; r < rows; ++r) u[final_basis[r]] = std::max(x_b[r], 0.0);

  sol.x.resize(k);
  for (int j = 0; j < k; ++j) {
    sol.x[j] = shift[j] + u[vars[j].plus];
    if (vars[j].minus >= 0) sol.x[j] -= u[vars[j].minus];
  }
  sol.objective = lp.objective.dot(sol.x);
  sol.eq_duals.resize(n_eq);
  sol.ineq_duals.resize(n_ineq);
  for (int r = 0; r < n_eq; ++r) sol.eq_duals[r] = y[r] * row_factor[r];
  for (int r = 0; r < n_ineq; ++r) {
    sol.ineq_duals[r] = y[n_eq + r] * row_factor[n_eq + r];
  }
  return sol;
}

double PrimalInfeasibility(const LinearProgram& lp, const Eigen::VectorXd& v) {
  double worst = 0.0;
  if (lp.num_eq() > 0) {
    worst = std::max(worst, (lp.eq_matrix * v - lp.eq_rhs).cwiseAbs().maxCoeff());
  }
  if (lp.num_ineq() > 0) {
    worst = std::max(worst, (lp.ineq_matrix * v - lp.ineq_rhs).maxCoeff());
  }
  for (int j = 0; j < lp.num_vars(); ++j) {
    if (!std::isinf(lp.lower[j])) worst = std::max(worst, lp.lower[j] - v[j]);
  }
  return worst;
}

namespace {

Eigen::VectorXd ReducedCosts(const LinearProgram& lp, const LpSolution& s) {
  Eigen::VectorXd d = lp.objective;
  if (lp.num_eq() > 0) d -= lp.eq_matrix.transpose() * s.eq_duals;
  if (lp.num_ineq() > 0) d -= lp.ineq_matrix.transpose() * s.ineq_duals;
  return d;
}

}  // namespace

double DualityGap(const LinearProgram& lp, const LpSolution& solution) {
  const Eigen::VectorXd d = ReducedCosts(lp, solution);
  double dual = 0.0;
  if (lp.num_eq() > 0) dual += lp.eq_rhs.dot(solution.eq_duals);
  if (lp.num_ineq() > 0) dual += lp.ineq_rhs.dot(solution.ineq_duals);
  for (int j = 0; j < lp.num_vars(); ++j) {
    if (!std::isinf(lp.lower[j])) dual += lp.lower[j] * d[j];
  }
  return lp.objective.dot(solution.x) - dual;
}

double DualInfeasibility(const LinearProgram& lp, const LpSolution& solution) {
  const Eigen::VectorXd d = ReducedCosts(lp, solution);
  double worst = 0.0;
  for (int j = 0; j < lp.num_vars(); ++j) {
    worst = std::max(worst, std::isinf(lp.lower[j]) ? std::abs(d[j]) : -d[j]);
  }
  for (int r = 0; r < lp.num_ineq(); ++r) {
    worst = std::max(worst, solution.ineq_duals[r]);
  }
  return worst;
}

}  // namespace rrce
