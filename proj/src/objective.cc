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

#include "rrce/objective.h"

#include <cmath>
#include <sstream>

#include "rrce/errors.h"

namespace rrce {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

void ValidateObjective(const Objective& objective, int num_players) {
  std::visit(Overloaded{
                 [](const FairnessThreshold& f) {
                   if (!std::isfinite(f.delta) || f.delta < 0.0) {
                     throw InvalidArgument("fairness threshold must be finite and >= 0");
                   }
                 },
                 [](const SumOfCosts&) {},
                 [num_players](const LinearCostObjective& l) {
                   if (l.weights.size() != num_players || !l.weights.allFinite()) {
                     throw InvalidArgument("objective weights must be n finite values");
                   }
                 },
             },
             objective);
}

double EvaluateObjective(const Objective& objective, const Eigen::VectorXd& costs) {
  return std::visit(
      Overloaded{
          [&costs](const FairnessThreshold& f) {
            const double c_max = costs.maxCoeff();
            double j = -static_cast<double>(costs.size()) * f.delta;
            for (Eigen::Index i = 0; i < costs.size(); ++i) {
              j += std::max(costs[i] + f.delta, c_max);
            }
            return j;
          },
          [&costs](const SumOfCosts&) { return costs.sum(); },
          [&costs](const LinearCostObjective& l) { return l.weights.dot(costs); },
      },
      objective);
}

std::string DescribeObjective(const Objective& objective) {
  return std::visit(Overloaded{
                        [](const FairnessThreshold& f) {
                          std::ostringstream os;
                          os << "fairness(delta=" << f.delta << ")";
                          return os.str();
                        },
                        [](const SumOfCosts&) { return std::string("sum"); },
                        [](const LinearCostObjective&) { return std::string("linear"); },
                    },
                    objective);
}

EncodedObjective EncodeObjective(const Objective& objective,
                                 const Eigen::MatrixXd& cost_map) {
  const int n = static_cast<int>(cost_map.rows());
  const int k = static_cast<int>(cost_map.cols());
  ValidateObjective(objective, n);
  if (!cost_map.allFinite()) throw InvalidArgument("cost map has non-finite entries");
  EncodedObjective out;
  out.num_decision = k;
  if (const auto* f = std::get_if<FairnessThreshold>(&objective)) {
    out.lp = LinearProgram::WithVariables(k + n);
    out.lp.objective.tail(n).setOnes();
    out.lp.lower.tail(n).setConstant(kNoLowerBound);
    out.constant = -static_cast<double>(n) * f->delta;
    // c_i - t_i <= -delta
    Eigen::MatrixXd own(n, k + n);
    own.leftCols(k) = cost_map;
    own.rightCols(n) = -Eigen::MatrixXd::Identity(n, n);
    out.lp.AddInequalities(own, Eigen::VectorXd::Constant(n, -f->delta));
    // c_j - t_i <= 0
    Eigen::MatrixXd cross = Eigen::MatrixXd::Zero(n * n, k + n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        cross.row(i * n + j).head(k) = cost_map.row(j);
        cross(i * n + j, k + i) = -1.0;
      }
    }
    out.lp.AddInequalities(cross, Eigen::VectorXd::Zero(n * n));
    return out;
  }
  out.lp = LinearProgram::WithVariables(k);
  if (std::holds_alternative<SumOfCosts>(objective)) {
    out.lp.objective = cost_map.colwise().sum().transpose();
  } else {
    out.lp.objective =
        cost_map.transpose() * std::get<LinearCostObjective>(objective).weights;
  }
  return out;
}

}  // namespace rrce
