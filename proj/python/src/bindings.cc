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

#include <string>
#include <vector>

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "rrce/atm.h"
#include "rrce/bench.h"
#include "rrce/equilibria.h"
#include "rrce/errors.h"
#include "rrce/io.h"
#include "rrce/nash.h"
#include "rrce/objective.h"

namespace py = pybind11;

namespace rrce {
namespace {

Objective MakeObjective(const std::string& kind, double delta) {
  if (kind == "fairness") return FairnessThreshold{delta};
  if (kind == "sum") return SumOfCosts{};
  throw InvalidArgument("objective must be 'fairness' or 'sum'");
}

StrategyProfile ToProfile(const std::vector<Eigen::VectorXd>& strategies) {
  std::vector<Strategy> s;
  for (const Eigen::VectorXd& x : strategies) s.emplace_back(x);
  return StrategyProfile(std::move(s));
}

std::vector<Eigen::VectorXd> FromProfile(const StrategyProfile& profile) {
  std::vector<Eigen::VectorXd> out;
  for (const Strategy& s : profile.strategies()) out.push_back(s.probs());
  return out;
}

NashSet ToNashSet(const Game& game, const std::vector<NashPoint>& points) {
  NashSet set;
  for (const NashPoint& p : points) set.points.push_back(MakeNashPoint(game, p.profile));
  return set;
}

}  // namespace
}  // namespace rrce

PYBIND11_MODULE(_rrce, m) {
  using namespace rrce;
  m.doc() = "Reduced-rank correlated equilibria for polymatrix games";
  m.attr("__version__") = VersionString();

  static py::exception<Error> error(m, "Error");
  static py::exception<CapExceeded> cap(m, "CapExceeded", error.ptr());
  static py::exception<NoEquilibriumFound> none(m, "NoEquilibriumFound", error.ptr());
  static py::exception<SolverFailure> failure(m, "SolverFailure", error.ptr());
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const CapExceeded& e) {
      PyErr_SetString(cap.ptr(), e.what());
    } catch (const NoEquilibriumFound& e) {
      PyErr_SetString(none.ptr(), e.what());
    } catch (const SolverFailure& e) {
      PyErr_SetString(failure.ptr(), e.what());
    } catch (const InvalidArgument& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    } catch (const InvalidConfig& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    } catch (const Error& e) {
      PyErr_SetString(error.ptr(), e.what());
    }
  });

  py::class_<Game>(m, "Game")
      .def(py::init([](int n, int num_actions,
                       const std::vector<std::tuple<int, int, Eigen::MatrixXd>>& pairs) {
             std::vector<PairCost> costs;
             for (const auto& [i, j, matrix] : pairs) costs.push_back({i, j, matrix});
             return Game::FromPairs(n, num_actions, std::move(costs));
           }),
           py::arg("n"), py::arg("m"), py::arg("pairs"),
           "Builds a game from (i, j, C_ij) triples covering every ordered pair.")
      .def_static("zero", &Game::Zero, py::arg("n"), py::arg("m"))
      .def_static("from_json", &GameFromJson, py::arg("text"))
      .def("to_json", &GameToJson)
      .def_property_readonly("num_players", &Game::num_players)
      .def_property_readonly("num_actions", &Game::num_actions)
      .def_property_readonly("joint_action_count", &Game::joint_action_count)
      .def("cost", &Game::cost, py::arg("i"), py::arg("j"),
           py::return_value_policy::copy)
      .def("pure_cost",
           [](const Game& g, int i, const std::vector<int>& actions) {
             return g.PureCost(i, actions);
           },
           py::arg("i"), py::arg("actions"))
      .def("fingerprint", &Game::Fingerprint)
      .def("__eq__", &Game::operator==);

  py::class_<NashPoint>(m, "NashPoint")
      .def_property_readonly("strategies",
                             [](const NashPoint& p) { return FromProfile(p.profile); })
      .def_readonly("kkt_residual", &NashPoint::kkt_residual)
      .def_readonly("is_pure", &NashPoint::is_pure);

  m.def("make_nash_point",
        [](const Game& g, const std::vector<Eigen::VectorXd>& strategies) {
          return MakeNashPoint(g, ToProfile(strategies));
        },
        py::arg("game"), py::arg("strategies"),
        "Certifies a strategy profile; the result carries its KKT residual.");
  m.def("kkt_residual",
        [](const Game& g, const std::vector<Eigen::VectorXd>& strategies) {
          return KktResidual(g, ToProfile(strategies)).residual;
        },
        py::arg("game"), py::arg("strategies"));
  m.def("enumerate_pure_nash",
        [](const Game& g, std::uint64_t cap) { return EnumeratePureNash(g, cap).points; },
        py::arg("game"), py::arg("enumeration_cap") = kDefaultEnumerationCap);
  m.def("find_nash",
        [](const Game& g, std::uint64_t seed, int restarts, double tol, int max_iterations) {
          NashSearchOptions options;
          options.restarts = restarts;
          options.tol = tol;
          options.max_iterations = max_iterations;
          return FindNashRandom(g, options, seed).points;
        },
        py::arg("game"), py::arg("seed") = 0, py::arg("restarts") = 20, py::arg("tol") = 1e-6,
        py::arg("max_iterations") = 10000);

  m.def("build_queue_game",
        [](int n, int r, std::vector<double> rates, double rho, double delta) {
          AtmConfig config;
          config.num_queues = n;
          config.runways = r;
          config.rates = rates.empty() ? std::vector<double>(n, 1.0) : std::move(rates);
          config.rho = rho;
          config.delta = delta;
          return BuildQueueGame(config);
        },
        py::arg("n"), py::arg("r"), py::arg("rates") = std::vector<double>{},
        py::arg("rho") = kDefaultYieldPenalty, py::arg("delta") = kDefaultCollisionPenalty);
  m.def("sample_rates",
        [](int n, std::uint64_t seed, double low, double high) {
          Rng rng(seed);
          return SampleRates(n, rng, low, high);
        },
        py::arg("n"), py::arg("seed"), py::arg("low") = kDefaultRateLow,
        py::arg("high") = kDefaultRateHigh);

  m.def("solve_ce",
        [](const Game& g, const std::string& objective, double delta, std::uint64_t cap) {
          CeOptions options;
          options.ce_cap = cap;
          const CeSolution sol = SolveCeOptimal(g, MakeObjective(objective, delta), options);
          py::dict out;
          out["J"] = sol.objective;
          out["costs"] = sol.costs;
          out["z"] = sol.z.dense().probs;
          out["violation"] = sol.violation;
          out["solver_time_s"] = sol.solver_time_s;
          return out;
        },
        py::arg("game"), py::arg("objective") = "fairness",
        py::arg("delta") = kDefaultFairnessThreshold, py::arg("ce_cap") = kDefaultCeCap);
  m.def("solve_rrce",
        [](const Game& g, const std::vector<NashPoint>& equilibria, const std::string& objective,
           double delta) {
          const RrceSolution sol =
              SolveRrce(g, ToNashSet(g, equilibria), MakeObjective(objective, delta));
          py::dict out;
          out["J"] = sol.objective;
          out["costs"] = sol.costs;
          out["gamma"] = sol.weights.gamma();
          out["violation"] = MixtureCeViolation(g, sol.z);
          out["solver_time_s"] = sol.solver_time_s;
          return out;
        },
        py::arg("game"), py::arg("equilibria"), py::arg("objective") = "fairness",
        py::arg("delta") = kDefaultFairnessThreshold);
  m.def("verify_ce",
        [](const Game& g, std::vector<double> z) {
          return VerifyCe(g, JointDistribution::Dense(g.num_players(), g.num_actions(),
                                                      std::move(z)));
        },
        py::arg("game"), py::arg("z"),
        "Largest CE constraint value of a dense distribution (player 0 most significant).");
  m.def("mixture_ce_violation",
        [](const Game& g, const std::vector<NashPoint>& equilibria,
           std::vector<double> weights) {
          std::vector<StrategyProfile> profiles;
          for (const NashPoint& p : equilibria) profiles.push_back(p.profile);
          return MixtureCeViolation(
              g, JointDistribution::Mixture(std::move(profiles), std::move(weights)));
        },
        py::arg("game"), py::arg("equilibria"), py::arg("weights"));
  m.def("evaluate_objective",
        [](const Eigen::VectorXd& costs, const std::string& objective, double delta) {
          return EvaluateObjective(MakeObjective(objective, delta), costs);
        },
        py::arg("costs"), py::arg("objective") = "fairness",
        py::arg("delta") = kDefaultFairnessThreshold);
  m.def("problem_size_report",
        [](int n, int num_actions) {
          const ProblemSize size = ProblemSizeReport(n, num_actions);
          return std::pair(size.nash_equations, size.ce_equations);
        },
        py::arg("n"), py::arg("m"), "Returns (nash equations, ce equations).");
  m.def("avg_cost", [](const std::vector<double>& c) { return AvgCost(c); }, py::arg("costs"));
  m.def("gini", [](const std::vector<double>& c) { return Gini(c); }, py::arg("costs"));
}
