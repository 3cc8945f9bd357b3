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

#include "rrce/nash.h"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include <Eigen/Dense>

namespace rrce {
namespace {

using Profile = std::vector<Eigen::VectorXd>;

Eigen::VectorXd Payoff(const Game& game, int i, const Profile& x) {
  Eigen::VectorXd g = Eigen::VectorXd::Zero(game.num_actions());
  for (int j = 0; j < game.num_players(); ++j) {
    if (j != i) g.noalias() += game.cost(i, j) * x[j];
  }
  return g;
}

// Lowest index wins ties.
int ArgMin(const Eigen::VectorXd& v) {
  int best = 0;
  for (int a = 1; a < v.size(); ++a) {
    if (v[a] < v[best]) best = a;
  }
  return best;
}

int ArgMax(const Eigen::VectorXd& v) {
  int best = 0;
  for (int a = 1; a < v.size(); ++a) {
    if (v[a] > v[best]) best = a;
  }
  return best;
}

StrategyProfile ToProfile(const Profile& x) {
  std::vector<Strategy> s;
  s.reserve(x.size());
  for (const Eigen::VectorXd& xi : x) {
    Eigen::VectorXd p = xi.cwiseMax(0.0);
    p /= p.sum();
    s.emplace_back(std::move(p));
  }
  return StrategyProfile(std::move(s));
}

// Solves the indifference system on the given supports: every supported
// action of player i has equal expected cost mu_i and the supported
// probabilities sum to one. The system is linear because costs are pairwise.
bool SolveOnSupport(const Game& game, const std::vector<std::vector<int>>& support,
                    Profile* out) {
  const int n = game.num_players();
  const int m = game.num_actions();
  std::vector<int> offset(n + 1, 0);
  for (int i = 0; i < n; ++i) {
    offset[i + 1] = offset[i] + static_cast<int>(support[i].size()) + 1;
  }
  const int dim = offset[n];
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(dim, dim);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(dim);
  for (int i = 0; i < n; ++i) {
    const int k_i = static_cast<int>(support[i].size());
    const int mu_col = offset[i] + k_i;
    for (int r = 0; r < k_i; ++r) {
      const int row = offset[i] + r;
      const int action = support[i][r];
      for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        const Eigen::MatrixXd& c = game.cost(i, j);
        for (std::size_t s = 0; s < support[j].size(); ++s) {
          a(row, offset[j] + static_cast<int>(s)) = c(action, support[j][s]);
        }
      }
      a(row, mu_col) = -1.0;
    }
    const int norm_row = offset[i] + k_i;
    for (int s = 0; s < k_i; ++s) a(norm_row, offset[i] + s) = 1.0;
    b[norm_row] = 1.0;
  }
  const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a);
  const Eigen::VectorXd sol = qr.solve(b);
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  if (!sol.allFinite() || (a * sol - b).cwiseAbs().maxCoeff() > 1e-9 * scale) {
    return false;
  }
  Profile x(n, Eigen::VectorXd::Zero(m));
  for (int i = 0; i < n; ++i) {
    for (std::size_t s = 0; s < support[i].size(); ++s) {
      const double p = sol[offset[i] + static_cast<int>(s)];
      if (p < -1e-9) return false;
      x[i][support[i][s]] = std::max(p, 0.0);
    }
    const double total = x[i].sum();
    if (total <= 0.0) return false;
    x[i] /= total;
  }
  *out = std::move(x);
  return true;
}

// Tries to turn an approximate point into an exactly certified one: first by
// snapping to the most likely pure profile, then by solving the indifference
// system on the current support.
bool Polish(const Game& game, const Profile& x, double support_threshold,
            double tol, NashPoint* out) {
  const int n = game.num_players();
  const int m = game.num_actions();
  std::vector<int> pure(n);
  for (int i = 0; i < n; ++i) pure[i] = ArgMax(x[i]);
  StrategyProfile snapped = StrategyProfile::Pure(m, pure);
  KktCertificate cert = KktResidual(game, snapped);
  if (cert.residual <= tol) {
    *out = MakeNashPoint(game, std::move(snapped));
    return true;
  }
  std::vector<std::vector<int>> support(n);
  bool is_pure_support = true;
  for (int i = 0; i < n; ++i) {
    for (int a = 0; a < m; ++a) {
      if (x[i][a] >= support_threshold || a == pure[i]) support[i].push_back(a);
    }
    if (support[i].size() > 1) is_pure_support = false;
  }
  if (is_pure_support) return false;
  Profile solved;
  if (!SolveOnSupport(game, support, &solved)) return false;
  NashPoint point = MakeNashPoint(game, ToProfile(solved));
  if (point.kkt_residual > tol) return false;
  *out = std::move(point);
  return true;
}

}  // namespace

std::vector<StrategyProfile> NashSet::profiles() const {
  std::vector<StrategyProfile> out;
  out.reserve(points.size());
  for (const NashPoint& p : points) out.push_back(p.profile);
  return out;
}

Eigen::VectorXd PayoffVector(const Game& game, int player,
                             const StrategyProfile& profile) {
  if (player < 0 || player >= game.num_players()) {
    throw OutOfRange("player " + std::to_string(player) + " out of range");
  }
  if (profile.num_players() != game.num_players() ||
      profile.num_actions() != game.num_actions()) {
    throw InvalidArgument("profile shape does not match the game");
  }
  Eigen::VectorXd g = Eigen::VectorXd::Zero(game.num_actions());
  for (int j = 0; j < game.num_players(); ++j) {
    if (j != player) g.noalias() += game.cost(player, j) * profile[j].probs();
  }
  return g;
}

KktCertificate KktResidual(const Game& game, const StrategyProfile& profile) {
  KktCertificate cert;
  const int n = game.num_players();
  cert.lambda.reserve(n);
  cert.mu.reserve(n);
  for (int i = 0; i < n; ++i) {
    const Eigen::VectorXd g = PayoffVector(game, i, profile);
    const double mu = g.minCoeff();
    Eigen::VectorXd lambda = g.array() - mu;
    cert.residual = std::max(cert.residual, lambda.dot(profile[i].probs()));
    cert.lambda.push_back(std::move(lambda));
    cert.mu.push_back(mu);
  }
  return cert;
}

NashPoint MakeNashPoint(const Game& game, StrategyProfile profile) {
  KktCertificate cert = KktResidual(game, profile);
  const bool pure = profile.IsPure();
  return NashPoint{std::move(profile), cert.residual, pure,
                   std::move(cert.lambda), std::move(cert.mu)};
}

bool RunBestResponseDynamics(const Game& game, const StrategyProfile& start,
                             const NashSearchOptions& options, NashPoint* out) {
  const int n = game.num_players();
  Profile x;
  x.reserve(n);
  for (int i = 0; i < n; ++i) x.push_back(start[i].probs());
  std::vector<Eigen::VectorXd> g(n);
  const int interval = std::max(1, options.polish_interval);
  for (int k = 0; k < options.max_iterations; ++k) {
    double residual = 0.0;
    for (int i = 0; i < n; ++i) {
      g[i] = Payoff(game, i, x);
      residual = std::max(residual, (g[i].array() - g[i].minCoeff()).matrix().dot(x[i]));
    }
    const double threshold = std::min(0.5, 2.0 / (k + 2));
    if (residual <= options.tol || k % interval == interval - 1) {
      if (Polish(game, x, threshold, options.tol, out)) return true;
      if (residual <= options.tol) {
        NashPoint point = MakeNashPoint(game, ToProfile(x));
        if (point.kkt_residual <= options.tol) {
          *out = std::move(point);
          return true;
        }
      }
    }
    const double step = 1.0 / (k + 2);
    for (int i = 0; i < n; ++i) {
      x[i] *= 1.0 - step;
      x[i][ArgMin(g[i])] += step;
    }
  }
  return false;
}

NashSet FindNashRandom(const Game& game, const NashSearchOptions& options,
                       std::uint64_t seed) {
  if (options.restarts < 1) throw InvalidArgument("restarts must be >= 1");
  std::vector<NashPoint> found;
  for (int r = 0; r < options.restarts; ++r) {
    Rng rng(DeriveSeed(seed, {static_cast<std::uint64_t>(r)}));
    std::vector<Strategy> start;
    for (int i = 0; i < game.num_players(); ++i) {
      start.push_back(Strategy::Random(game.num_actions(), rng));
    }
    NashPoint point{StrategyProfile(std::move(start)), 0.0, false, {}, {}};
    if (RunBestResponseDynamics(game, point.profile, options, &point)) {
      found.push_back(std::move(point));
    }
  }
  if (found.empty()) {
    throw NoEquilibriumFound("no restart out of " + std::to_string(options.restarts) +
                             " reached KKT residual " + std::to_string(options.tol));
  }
  return DedupeEquilibria(std::move(found), options.dedupe_tol);
}

NashPoint FindFirstNash(const Game& game, const NashSearchOptions& options,
                        std::uint64_t seed) {
  if (options.restarts < 1) throw InvalidArgument("restarts must be >= 1");
  for (int r = 0; r < options.restarts; ++r) {
    Rng rng(DeriveSeed(seed, {static_cast<std::uint64_t>(r)}));
    std::vector<Strategy> start;
    for (int i = 0; i < game.num_players(); ++i) {
      start.push_back(Strategy::Random(game.num_actions(), rng));
    }
    NashPoint point{StrategyProfile(std::move(start)), 0.0, false, {}, {}};
    if (RunBestResponseDynamics(game, point.profile, options, &point)) return point;
  }
  throw NoEquilibriumFound("no restart out of " + std::to_string(options.restarts) +
                           " reached KKT residual " + std::to_string(options.tol));
}

NashSet EnumeratePureNash(const Game& game, std::uint64_t enumeration_cap) {
  const int n = game.num_players();
  const int m = game.num_actions();
  const std::uint64_t count = game.joint_action_count();
  if (count > enumeration_cap) {
    throw CapExceeded("EnumeratePureNash", count, enumeration_cap);
  }
  // partial[d] holds, for every player i and action a, the sum over the first
  // d players j != i of C^{ij}[a, a_j]. The summation order matches
  // PayoffVector, so the leaf values are bit-identical to it.
  std::vector<std::vector<double>> partial(n + 1, std::vector<double>(n * m, 0.0));
  std::vector<int> actions(n, 0);
  NashSet result;

  auto fill = [&](int depth) {
    const std::vector<double>& prev = partial[depth];
    std::vector<double>& next = partial[depth + 1];
    const int a_d = actions[depth];
    for (int i = 0; i < n; ++i) {
      if (i == depth) {
        std::copy_n(prev.begin() + i * m, m, next.begin() + i * m);
        continue;
      }
      const Eigen::MatrixXd& c = game.cost(i, depth);
      for (int a = 0; a < m; ++a) next[i * m + a] = prev[i * m + a] + c(a, a_d);
    }
  };

  int depth = 0;
  actions[0] = 0;
  fill(0);
  while (depth >= 0) {
    if (depth == n - 1) {
      const std::vector<double>& g = partial[n];
      bool equilibrium = true;
      for (int i = 0; i < n && equilibrium; ++i) {
        const double own = g[i * m + actions[i]];
        for (int a = 0; a < m; ++a) {
          if (g[i * m + a] < own) {
            equilibrium = false;
            break;
          }
        }
      }
      if (equilibrium) {
        result.points.push_back(MakeNashPoint(game, StrategyProfile::Pure(m, actions)));
      }
    } else {
      ++depth;
      actions[depth] = 0;
      fill(depth);
      continue;
    }
    // Advance to the next sibling, backtracking as needed.
    while (depth >= 0 && actions[depth] == m - 1) --depth;
    if (depth < 0) break;
    ++actions[depth];
    fill(depth);
  }
  return result;
}

NashSet DedupeEquilibria(std::vector<NashPoint> points, double tol) {
  NashSet kept;
  for (NashPoint& p : points) {
    bool duplicate = false;
    for (const NashPoint& q : kept.points) {
      if (p.profile.DistanceTo(q.profile) < tol) {
        duplicate = true;
        break;
      }
    }
    if (!duplicate) kept.points.push_back(std::move(p));
  }
  return kept;
}

}  // namespace rrce
