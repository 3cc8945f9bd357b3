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

#ifndef RRCE_OBJECTIVE_H_
#define RRCE_OBJECTIVE_H_

#include <string>
#include <variant>

#include <Eigen/Core>

#include "rrce/simplex.h"

namespace rrce {

inline constexpr double kDefaultFairnessThreshold = 5.0;

// Fairness threshold with maximin fairness:
//   J(c) = -n * delta + sum_i max(c_i + delta, max_j c_j).
// Within the threshold J is the total cost; beyond it the worst-off player
// dominates.
struct FairnessThreshold {
  double delta = kDefaultFairnessThreshold;
};

// J(c) = sum_i c_i.
struct SumOfCosts {};

// J(c) = w^T c.
struct LinearCostObjective {
  Eigen::VectorXd weights;
};

using Objective = std::variant<FairnessThreshold, SumOfCosts, LinearCostObjective>;

// Throws InvalidArgument for a negative or non-finite threshold, or weights of
// the wrong length.
void ValidateObjective(const Objective& objective, int num_players);

double EvaluateObjective(const Objective& objective, const Eigen::VectorXd& costs);

std::string DescribeObjective(const Objective& objective);

// LP over [v (k decision variables, >= 0) | auxiliaries] whose optimal value
// plus `constant` is min J(cost_map * v). Callers append their own rows over
// the first k columns (auxiliary coefficients zero).
struct EncodedObjective {
  LinearProgram lp;
  double constant = 0.0;
  int num_decision = 0;
};

// Fairness threshold uses free auxiliaries t_1..t_n:
//   minimize -n*delta + sum_i t_i
//   s.t.     t_i >= c_i + delta,  t_i >= c_j  for all i, j,
// so t_i = max(c_i + delta, c_max) at the optimum.
EncodedObjective EncodeObjective(const Objective& objective,
                                 const Eigen::MatrixXd& cost_map);

}  // namespace rrce

#endif  // RRCE_OBJECTIVE_H_
