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

// Polymatrix games, strategies and joint-action distributions.
//
// A game has n players with m actions each. Player i pays
//   sum_{j != i} C^{ij}[a_i, a_j]
// at joint action a. Joint actions are flattened mixed-radix, base m, with
// player 0 the most significant digit. Action and player indices are 0-based
// throughout the library.

#ifndef RRCE_GAME_H_
#define RRCE_GAME_H_

#include <cstdint>
#include <initializer_list>
#include <span>
#include <utility>
#include <variant>
#include <vector>

#include <Eigen/Core>

#include "rrce/errors.h"
#include "rrce/rng.h"

namespace rrce {

inline constexpr std::uint64_t kDefaultDenseCap = 1ULL << 22;
inline constexpr double kProbabilityTolerance = 1e-9;

// m^n; throws Overflow if it does not fit in 64 bits.
std::uint64_t JointActionCount(int num_players, int num_actions);

// One cost matrix C^{ij}, rows indexed by player i's action.
struct PairCost {
  int i = 0;
  int j = 0;
  Eigen::MatrixXd matrix;
};

class Game {
 public:
  // All-zero costs.
  static Game Zero(int num_players, int num_actions);

  // Requires exactly one entry for every ordered pair i != j.
  static Game FromPairs(int num_players, int num_actions,
                        std::vector<PairCost> pairs);

  int num_players() const { return n_; }
  int num_actions() const { return m_; }
  std::uint64_t joint_action_count() const { return joint_actions_; }

  const Eigen::MatrixXd& cost(int i, int j) const;

  // Pure-action cost of player i at joint action `actions`.
  double PureCost(int i, std::span<const int> actions) const;

  double MaxAbsCost() const;

  // FNV-1a over dimensions and cost bits; equal games hash equal.
  std::uint64_t Fingerprint() const;

  bool operator==(const Game& other) const;

 private:
  Game(int n, int m, std::vector<Eigen::MatrixXd> costs);

  int n_;
  int m_;
  std::uint64_t joint_actions_;
  std::vector<Eigen::MatrixXd> costs_;  // index i * n + j, diagonal empty
};

// A point of the probability simplex over m actions.
class Strategy {
 public:
  explicit Strategy(Eigen::VectorXd probs);
  Strategy(std::initializer_list<double> probs);

  static Strategy Pure(int num_actions, int action);
  static Strategy Uniform(int num_actions);
  // Uniform random point on the simplex.
  static Strategy Random(int num_actions, Rng& rng);

  int size() const { return static_cast<int>(probs_.size()); }
  double operator[](int a) const { return probs_[a]; }
  const Eigen::VectorXd& probs() const { return probs_; }

  // Returns the action if all mass sits on one action, otherwise -1.
  int PureAction() const;

 private:
  Eigen::VectorXd probs_;
};

class StrategyProfile {
 public:
  explicit StrategyProfile(std::vector<Strategy> strategies);

  static StrategyProfile Pure(int num_actions, std::span<const int> actions);
  static StrategyProfile Pure(int num_actions, std::initializer_list<int> actions);

  int num_players() const { return static_cast<int>(strategies_.size()); }
  int num_actions() const { return strategies_.front().size(); }
  const Strategy& operator[](int i) const { return strategies_[i]; }
  const std::vector<Strategy>& strategies() const { return strategies_; }

  bool IsPure() const;
  // L-infinity distance over all concatenated entries.
  double DistanceTo(const StrategyProfile& other) const;

 private:
  std::vector<Strategy> strategies_;
};

std::uint64_t EncodeJointAction(std::span<const int> actions, int num_players,
                                int num_actions);
std::vector<int> DecodeJointAction(std::uint64_t flat_index, int num_players,
                                   int num_actions);

struct JointAction {
  std::vector<int> actions;
  std::uint64_t flat_index = 0;
};

// Dense probability tensor over all m^n joint actions, flat encoded.
struct DenseTensor {
  std::vector<double> probs;
};

// sum_k weights[k] * (outer product of points[k]).
struct Rank1Mixture {
  std::vector<StrategyProfile> points;
  std::vector<double> weights;
};

class JointDistribution {
 public:
  static JointDistribution Dense(int num_players, int num_actions,
                                 std::vector<double> probs);
  static JointDistribution Mixture(std::vector<StrategyProfile> points,
                                   std::vector<double> weights);
  static JointDistribution OneHot(int num_players, int num_actions,
                                  std::span<const int> actions);

  int num_players() const { return n_; }
  int num_actions() const { return m_; }
  bool is_dense() const { return std::holds_alternative<DenseTensor>(repr_); }
  // d for a mixture, m^n for a dense tensor.
  std::uint64_t rank_bound() const;

  const DenseTensor& dense() const { return std::get<DenseTensor>(repr_); }
  const Rank1Mixture& mixture() const { return std::get<Rank1Mixture>(repr_); }

 private:
  JointDistribution(int n, int m, std::variant<DenseTensor, Rank1Mixture> repr)
      : n_(n), m_(m), repr_(std::move(repr)) {}

  int n_;
  int m_;
  std::variant<DenseTensor, Rank1Mixture> repr_;
};

// While alive, any attempt on this thread to materialize an m^n-sized array
// throws DenseAllocationForbidden. Nests.
class DenseAllocationGuard {
 public:
  DenseAllocationGuard();
  ~DenseAllocationGuard();
  DenseAllocationGuard(const DenseAllocationGuard&) = delete;
  DenseAllocationGuard& operator=(const DenseAllocationGuard&) = delete;
};

// Number of m^n-sized allocations made on this thread so far.
std::uint64_t DenseAllocationCount();

// Checks the dense cap and the allocation guard before an m^n allocation.
void CheckDenseAllocation(std::uint64_t entries, std::uint64_t cap,
                          const char* what);

JointDistribution ProfileToDistribution(const Game& game,
                                        const StrategyProfile& profile,
                                        std::uint64_t dense_cap = kDefaultDenseCap);

// Materializes a mixture as a dense tensor; dense input is returned as is.
JointDistribution Densify(const JointDistribution& z,
                          std::uint64_t dense_cap = kDefaultDenseCap);

// Expected cost of each player under z. Mixtures are evaluated per component
// without materializing the tensor.
Eigen::VectorXd CostOfDistribution(const Game& game, const JointDistribution& z);

// c_i = sum_{j != i} x_i^T C^{ij} x_j.
Eigen::VectorXd CostOfProfile(const Game& game, const StrategyProfile& profile);

JointAction SampleJointAction(const JointDistribution& z, Rng& rng);

// Uniform double in [0, 1) built from the top 53 bits of one draw.
inline double UniformUnit(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace rrce

#endif  // RRCE_GAME_H_
