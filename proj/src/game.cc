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

#include "rrce/game.h"

#include <bit>
#include <cmath>
#include <cstring>
#include <limits>
#include <string>
#include <utility>

namespace rrce {
namespace {

thread_local int guard_depth = 0;
thread_local std::uint64_t dense_allocations = 0;

void CheckSimplex(const Eigen::VectorXd& p, const char* what) {
  if (p.size() < 1) throw InvalidArgument(std::string(what) + ": empty vector");
  double sum = 0.0;
  for (Eigen::Index a = 0; a < p.size(); ++a) {
    if (!std::isfinite(p[a]) || p[a] < 0.0) {
      throw InvalidArgument(std::string(what) + ": negative or non-finite entry");
    }
    sum += p[a];
  }
  if (std::abs(sum - 1.0) > kProbabilityTolerance) {
    throw InvalidArgument(std::string(what) + ": entries sum to " +
                          std::to_string(sum));
  }
}

int SampleCategorical(const Eigen::VectorXd& p, Rng& rng) {
  const double u = UniformUnit(rng);
  double acc = 0.0;
  int last_positive = 0;
  for (Eigen::Index a = 0; a < p.size(); ++a) {
    if (p[a] <= 0.0) continue;
    acc += p[a];
    last_positive = static_cast<int>(a);
    if (u < acc) return last_positive;
  }
  return last_positive;
}

// Advances a base-m odometer, last player fastest.
void Increment(std::vector<int>& actions, int m) {
  for (int i = static_cast<int>(actions.size()) - 1; i >= 0; --i) {
    if (++actions[i] < m) return;
    actions[i] = 0;
  }
}

}  // namespace

std::uint64_t JointActionCount(int num_players, int num_actions) {
  if (num_players < 0 || num_actions < 0) {
    throw InvalidArgument("JointActionCount: negative dimension");
  }
  std::uint64_t count = 1;
  for (int i = 0; i < num_players; ++i) {
    if (num_actions != 0 &&
        count > std::numeric_limits<std::uint64_t>::max() /
                    static_cast<std::uint64_t>(num_actions)) {
      throw Overflow("m^n overflows 64 bits");
    }
    count *= static_cast<std::uint64_t>(num_actions);
  }
  return count;
}

Game::Game(int n, int m, std::vector<Eigen::MatrixXd> costs)
    : n_(n), m_(m), joint_actions_(0), costs_(std::move(costs)) {
  if (n < 2) throw InvalidArgument("a game needs at least 2 players");
  if (m < 2) throw InvalidArgument("a game needs at least 2 actions per player");
  // Counts beyond 64 bits are representable as a game, never as a tensor.
  try {
    joint_actions_ = JointActionCount(n, m);
  } catch (const Overflow&) {
    joint_actions_ = std::numeric_limits<std::uint64_t>::max();
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const Eigen::MatrixXd& c = costs_[i * n + j];
      if (c.rows() != m || c.cols() != m) {
        throw InvalidArgument("cost matrix C^{" + std::to_string(i) + "," +
                              std::to_string(j) + "} is not m x m");
      }
      if (!c.allFinite()) {
        throw InvalidArgument("cost matrix C^{" + std::to_string(i) + "," +
                              std::to_string(j) + "} has non-finite entries");
      }
    }
  }
}

Game Game::Zero(int num_players, int num_actions) {
  std::vector<Eigen::MatrixXd> costs(
      static_cast<std::size_t>(std::max(num_players, 0)) *
      static_cast<std::size_t>(std::max(num_players, 0)));
  for (int i = 0; i < num_players; ++i) {
    for (int j = 0; j < num_players; ++j) {
      if (i != j) costs[i * num_players + j] = Eigen::MatrixXd::Zero(num_actions, num_actions);
    }
  }
  return Game(num_players, num_actions, std::move(costs));
}

Game Game::FromPairs(int num_players, int num_actions,
                     std::vector<PairCost> pairs) {
  if (num_players < 2 || num_actions < 2) {
    throw InvalidArgument("a game needs n >= 2 and m >= 2");
  }
  const std::size_t n = static_cast<std::size_t>(num_players);
  std::vector<Eigen::MatrixXd> costs(n * n);
  std::vector<bool> seen(n * n, false);
  for (PairCost& p : pairs) {
    if (p.i < 0 || p.i >= num_players || p.j < 0 || p.j >= num_players ||
        p.i == p.j) {
      throw InvalidArgument("invalid cost pair (" + std::to_string(p.i) + ", " +
                            std::to_string(p.j) + ")");
    }
    const std::size_t k = static_cast<std::size_t>(p.i) * n + p.j;
    if (seen[k]) {
      throw InvalidArgument("duplicate cost pair (" + std::to_string(p.i) +
                            ", " + std::to_string(p.j) + ")");
    }
    seen[k] = true;
    costs[k] = std::move(p.matrix);
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j && !seen[i * n + j]) {
        throw InvalidArgument("missing cost pair (" + std::to_string(i) + ", " +
                              std::to_string(j) + ")");
      }
    }
  }
  return Game(num_players, num_actions, std::move(costs));
}

const Eigen::MatrixXd& Game::cost(int i, int j) const {
  if (i < 0 || i >= n_ || j < 0 || j >= n_ || i == j) {
    throw OutOfRange("no cost matrix for pair (" + std::to_string(i) + ", " +
                     std::to_string(j) + ")");
  }
  return costs_[i * n_ + j];
}

double Game::PureCost(int i, std::span<const int> actions) const {
  double c = 0.0;
  for (int j = 0; j < n_; ++j) {
    if (j != i) c += costs_[i * n_ + j](actions[i], actions[j]);
  }
  return c;
}

double Game::MaxAbsCost() const {
  double best = 0.0;
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j < n_; ++j) {
      if (i != j) best = std::max(best, costs_[i * n_ + j].cwiseAbs().maxCoeff());
    }
  }
  return best;
}

std::uint64_t Game::Fingerprint() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](std::uint64_t v) {
    for (int b = 0; b < 8; ++b) {
      h ^= (v >> (8 * b)) & 0xffU;
      h *= 0x100000001b3ULL;
    }
  };
  mix(static_cast<std::uint64_t>(n_));
  mix(static_cast<std::uint64_t>(m_));
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j < n_; ++j) {
      if (i == j) continue;
      const Eigen::MatrixXd& c = costs_[i * n_ + j];
      for (int a = 0; a < m_; ++a) {
        for (int b = 0; b < m_; ++b) mix(std::bit_cast<std::uint64_t>(c(a, b)));
      }
    }
  }
  return h;
}

bool Game::operator==(const Game& other) const {
  if (n_ != other.n_ || m_ != other.m_) return false;
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j < n_; ++j) {
      if (i != j && costs_[i * n_ + j] != other.costs_[i * n_ + j]) return false;
    }
  }
  return true;
}

Strategy::Strategy(Eigen::VectorXd probs) : probs_(std::move(probs)) {
  CheckSimplex(probs_, "Strategy");
}

Strategy::Strategy(std::initializer_list<double> probs)
    : Strategy(Eigen::Map<const Eigen::VectorXd>(
          probs.begin(), static_cast<Eigen::Index>(probs.size()))) {}

Strategy Strategy::Pure(int num_actions, int action) {
  if (action < 0 || action >= num_actions) {
    throw OutOfRange("pure action " + std::to_string(action) + " out of range");
  }
  Eigen::VectorXd p = Eigen::VectorXd::Zero(num_actions);
  p[action] = 1.0;
  return Strategy(std::move(p));
}

Strategy Strategy::Uniform(int num_actions) {
  return Strategy(Eigen::VectorXd::Constant(num_actions, 1.0 / num_actions));
}

Strategy Strategy::Random(int num_actions, Rng& rng) {
  // Normalized exponentials are uniform on the simplex.
  Eigen::VectorXd p(num_actions);
  for (int a = 0; a < num_actions; ++a) p[a] = -std::log1p(-UniformUnit(rng));
  const double total = p.sum();
  if (total <= 0.0) return Uniform(num_actions);
  p /= total;
  return Strategy(std::move(p));
}

int Strategy::PureAction() const {
  int found = -1;
  for (int a = 0; a < size(); ++a) {
    if (probs_[a] == 1.0) {
      found = a;
    } else if (probs_[a] != 0.0) {
      return -1;
    }
  }
  return found;
}

StrategyProfile::StrategyProfile(std::vector<Strategy> strategies)
    : strategies_(std::move(strategies)) {
  if (strategies_.empty()) throw InvalidArgument("empty strategy profile");
  for (const Strategy& s : strategies_) {
    if (s.size() != strategies_.front().size()) {
      throw InvalidArgument("strategies of different lengths in one profile");
    }
  }
}

StrategyProfile StrategyProfile::Pure(int num_actions,
                                      std::span<const int> actions) {
  std::vector<Strategy> s;
  s.reserve(actions.size());
  for (int a : actions) s.push_back(Strategy::Pure(num_actions, a));
  return StrategyProfile(std::move(s));
}

StrategyProfile StrategyProfile::Pure(int num_actions,
                                      std::initializer_list<int> actions) {
  return Pure(num_actions, std::span<const int>(actions.begin(), actions.size()));
}

bool StrategyProfile::IsPure() const {
  for (const Strategy& s : strategies_) {
    if (s.PureAction() < 0) return false;
  }
  return true;
}

double StrategyProfile::DistanceTo(const StrategyProfile& other) const {
  if (other.num_players() != num_players() ||
      other.num_actions() != num_actions()) {
    throw InvalidArgument("profiles of different shapes");
  }
  double d = 0.0;
  for (int i = 0; i < num_players(); ++i) {
    d = std::max(d, (strategies_[i].probs() - other[i].probs()).cwiseAbs().maxCoeff());
  }
  return d;
}

std::uint64_t EncodeJointAction(std::span<const int> actions, int num_players,
                                int num_actions) {
  if (static_cast<int>(actions.size()) != num_players) {
    throw OutOfRange("joint action has " + std::to_string(actions.size()) +
                     " entries, expected " + std::to_string(num_players));
  }
  JointActionCount(num_players, num_actions);  // throws Overflow
  std::uint64_t index = 0;
  for (int a : actions) {
    if (a < 0 || a >= num_actions) {
      throw OutOfRange("action " + std::to_string(a) + " out of range");
    }
    index = index * static_cast<std::uint64_t>(num_actions) +
            static_cast<std::uint64_t>(a);
  }
  return index;
}

std::vector<int> DecodeJointAction(std::uint64_t flat_index, int num_players,
                                   int num_actions) {
  if (flat_index >= JointActionCount(num_players, num_actions)) {
    throw OutOfRange("flat index " + std::to_string(flat_index) + " out of range");
  }
  std::vector<int> actions(num_players);
  const auto m = static_cast<std::uint64_t>(num_actions);
  for (int i = num_players - 1; i >= 0; --i) {
    actions[i] = static_cast<int>(flat_index % m);
    flat_index /= m;
  }
  return actions;
}

JointDistribution JointDistribution::Dense(int num_players, int num_actions,
                                           std::vector<double> probs) {
  const std::uint64_t count = JointActionCount(num_players, num_actions);
  if (probs.size() != count) {
    throw InvalidArgument("dense tensor has " + std::to_string(probs.size()) +
                          " entries, expected " + std::to_string(count));
  }
  double sum = 0.0;
  for (double p : probs) {
    if (!std::isfinite(p) || p < 0.0) {
      throw InvalidArgument("dense tensor has a negative or non-finite entry");
    }
    sum += p;
  }
  if (std::abs(sum - 1.0) > kProbabilityTolerance) {
    throw InvalidArgument("dense tensor sums to " + std::to_string(sum));
  }
  return JointDistribution(num_players, num_actions,
                           DenseTensor{std::move(probs)});
}

JointDistribution JointDistribution::Mixture(std::vector<StrategyProfile> points,
                                             std::vector<double> weights) {
  if (points.empty()) throw InvalidArgument("mixture with no components");
  if (points.size() != weights.size()) {
    throw InvalidArgument("mixture weights and points differ in length");
  }
  const int n = points.front().num_players();
  const int m = points.front().num_actions();
  double sum = 0.0;
  for (std::size_t k = 0; k < points.size(); ++k) {
    if (points[k].num_players() != n || points[k].num_actions() != m) {
      throw InvalidArgument("mixture components of different shapes");
    }
    if (!std::isfinite(weights[k]) || weights[k] < 0.0) {
      throw InvalidArgument("mixture weight negative or non-finite");
    }
    sum += weights[k];
  }
  if (std::abs(sum - 1.0) > kProbabilityTolerance) {
    throw InvalidArgument("mixture weights sum to " + std::to_string(sum));
  }
  return JointDistribution(n, m,
                           Rank1Mixture{std::move(points), std::move(weights)});
}

JointDistribution JointDistribution::OneHot(int num_players, int num_actions,
                                            std::span<const int> actions) {
  if (static_cast<int>(actions.size()) != num_players) {
    throw InvalidArgument("one-hot distribution needs one action per player");
  }
  return Mixture({StrategyProfile::Pure(num_actions, actions)}, {1.0});
}

std::uint64_t JointDistribution::rank_bound() const {
  if (is_dense()) return dense().probs.size();
  return mixture().points.size();
}

DenseAllocationGuard::DenseAllocationGuard() { ++guard_depth; }
DenseAllocationGuard::~DenseAllocationGuard() { --guard_depth; }

std::uint64_t DenseAllocationCount() { return dense_allocations; }

void CheckDenseAllocation(std::uint64_t entries, std::uint64_t cap,
                          const char* what) {
  if (guard_depth > 0) {
    throw DenseAllocationForbidden(std::string(what) +
                                   ": dense joint-action allocation of " +
                                   std::to_string(entries) +
                                   " entries inside a rank-1 path");
  }
  if (entries > cap) throw CapExceeded(what, entries, cap);
  ++dense_allocations;
}

JointDistribution ProfileToDistribution(const Game& game,
                                        const StrategyProfile& profile,
                                        std::uint64_t dense_cap) {
  if (profile.num_players() != game.num_players() ||
      profile.num_actions() != game.num_actions()) {
    throw InvalidArgument("profile shape does not match the game");
  }
  return Densify(JointDistribution::Mixture({profile}, {1.0}), dense_cap);
}

JointDistribution Densify(const JointDistribution& z, std::uint64_t dense_cap) {
  if (z.is_dense()) return z;
  const int n = z.num_players();
  const int m = z.num_actions();
  const std::uint64_t count = JointActionCount(n, m);
  CheckDenseAllocation(count, dense_cap, "Densify");
  std::vector<double> probs(count, 0.0);
  // Outer product built one player at a time: after step i the prefix holds
  // the product of the first i+1 strategies.
  std::vector<double> scratch(count);
  const Rank1Mixture& mix = z.mixture();
  for (std::size_t k = 0; k < mix.points.size(); ++k) {
    if (mix.weights[k] == 0.0) continue;
    const StrategyProfile& x = mix.points[k];
    std::size_t len = 1;
    scratch[0] = mix.weights[k];
    for (int i = 0; i < n; ++i) {
      for (std::size_t p = len; p-- > 0;) {
        const double v = scratch[p];
        for (int a = m - 1; a >= 0; --a) scratch[p * m + a] = v * x[i][a];
      }
      len *= static_cast<std::size_t>(m);
    }
    for (std::uint64_t a = 0; a < count; ++a) probs[a] += scratch[a];
  }
  double sum = 0.0;
  for (double p : probs) sum += p;
  for (double& p : probs) p /= sum;
  return JointDistribution::Dense(n, m, std::move(probs));
}

Eigen::VectorXd CostOfProfile(const Game& game, const StrategyProfile& profile) {
  const int n = game.num_players();
  if (profile.num_players() != n || profile.num_actions() != game.num_actions()) {
    throw InvalidArgument("profile shape does not match the game");
  }
  Eigen::VectorXd c = Eigen::VectorXd::Zero(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      c[i] += profile[i].probs().dot(game.cost(i, j) * profile[j].probs());
    }
  }
  return c;
}

Eigen::VectorXd CostOfDistribution(const Game& game, const JointDistribution& z) {
  const int n = game.num_players();
  if (z.num_players() != n || z.num_actions() != game.num_actions()) {
    throw InvalidArgument("distribution shape does not match the game");
  }
  if (!z.is_dense()) {
    const Rank1Mixture& mix = z.mixture();
    Eigen::VectorXd c = Eigen::VectorXd::Zero(n);
    for (std::size_t k = 0; k < mix.points.size(); ++k) {
      if (mix.weights[k] != 0.0) c += mix.weights[k] * CostOfProfile(game, mix.points[k]);
    }
    return c;
  }
  const std::vector<double>& probs = z.dense().probs;
  Eigen::VectorXd c = Eigen::VectorXd::Zero(n);
  std::vector<int> actions(n, 0);
  for (std::uint64_t a = 0; a < probs.size(); ++a, Increment(actions, game.num_actions())) {
    if (probs[a] == 0.0) continue;
    for (int i = 0; i < n; ++i) c[i] += probs[a] * game.PureCost(i, actions);
  }
  return c;
}

JointAction SampleJointAction(const JointDistribution& z, Rng& rng) {
  const int n = z.num_players();
  const int m = z.num_actions();
  JointAction out;
  if (z.is_dense()) {
    const std::vector<double>& probs = z.dense().probs;
    const double u = UniformUnit(rng);
    double acc = 0.0;
    std::uint64_t chosen = 0;
    for (std::uint64_t a = 0; a < probs.size(); ++a) {
      if (probs[a] <= 0.0) continue;
      acc += probs[a];
      chosen = a;
      if (u < acc) break;
    }
    out.flat_index = chosen;
    out.actions = DecodeJointAction(chosen, n, m);
    return out;
  }
  const Rank1Mixture& mix = z.mixture();
  const Eigen::Map<const Eigen::VectorXd> gamma(
      mix.weights.data(), static_cast<Eigen::Index>(mix.weights.size()));
  const int k = SampleCategorical(gamma, rng);
  out.actions.resize(n);
  for (int i = 0; i < n; ++i) {
    out.actions[i] = SampleCategorical(mix.points[k][i].probs(), rng);
  }
  out.flat_index = EncodeJointAction(out.actions, n, m);
  return out;
}

}  // namespace rrce
