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

#include "rrce/io.h"

#include <fstream>
#include <sstream>
#include <thread>
#include <variant>

#include "json.hpp"

namespace rrce {
namespace {

using nlohmann::json;

json Parse(const std::string& text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string(what) + ": " + e.what());
  }
}

template <class T>
T Get(const json& doc, const char* key, const char* what) {
  if (!doc.contains(key)) {
    throw InvalidArgument(std::string(what) + ": missing field '" + key + "'");
  }
  try {
    return doc.at(key).get<T>();
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string(what) + ": field '" + key + "': " + e.what());
  }
}

template <class T>
std::optional<T> GetOptional(const json& doc, const char* key, const char* what) {
  if (!doc.contains(key) || doc.at(key).is_null()) return std::nullopt;
  return Get<T>(doc, key, what);
}

std::vector<double> ToVector(const Eigen::VectorXd& v) {
  return std::vector<double>(v.data(), v.data() + v.size());
}

json ObjectiveToJson(const Objective& objective) {
  return std::visit(
      [](const auto& o) -> json {
        using T = std::decay_t<decltype(o)>;
        if constexpr (std::is_same_v<T, FairnessThreshold>) {
          return {{"kind", "fairness"}, {"delta", o.delta}};
        } else if constexpr (std::is_same_v<T, SumOfCosts>) {
          return {{"kind", "sum"}};
        } else {
          return {{"kind", "linear"}, {"weights", ToVector(o.weights)}};
        }
      },
      objective);
}

std::string Dump(const json& doc) { return doc.dump(2) + "\n"; }

}  // namespace

std::string GameToJson(const Game& game) {
  const int n = game.num_players();
  const int m = game.num_actions();
  json costs = json::array();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const Eigen::MatrixXd& c = game.cost(i, j);
      std::vector<double> flat;
      flat.reserve(static_cast<std::size_t>(m) * m);
      for (int a = 0; a < m; ++a) {
        for (int b = 0; b < m; ++b) flat.push_back(c(a, b));
      }
      costs.push_back({{"i", i}, {"j", j}, {"matrix", flat}});
    }
  }
  return Dump({{"n", n}, {"m", m}, {"costs", costs}});
}

Game GameFromJson(const std::string& text) {
  constexpr const char* kWhat = "game";
  const json doc = Parse(text, kWhat);
  if (!doc.is_object()) throw InvalidArgument("game: expected a JSON object");
  const int n = Get<int>(doc, "n", kWhat);
  const int m = Get<int>(doc, "m", kWhat);
  if (n < 2 || m < 1) throw InvalidArgument("game: need n >= 2 and m >= 1");
  const json& costs = doc.contains("costs") ? doc.at("costs") : json();
  if (!costs.is_array()) throw InvalidArgument("game: 'costs' must be an array");
  std::vector<PairCost> pairs;
  for (const json& rec : costs) {
    PairCost p;
    p.i = Get<int>(rec, "i", kWhat);
    p.j = Get<int>(rec, "j", kWhat);
    if (!rec.contains("matrix")) throw InvalidArgument("game: missing field 'matrix'");
    const json& mat = rec.at("matrix");
    std::vector<double> flat;
    try {
      if (!mat.empty() && mat.front().is_array()) {
        for (const json& row : mat) {
          const auto r = row.get<std::vector<double>>();
          if (static_cast<int>(r.size()) != m) {
            throw InvalidArgument("game: matrix row has wrong length");
          }
          flat.insert(flat.end(), r.begin(), r.end());
        }
      } else {
        flat = mat.get<std::vector<double>>();
      }
    } catch (const json::exception& e) {
      throw InvalidArgument(std::string("game: matrix: ") + e.what());
    }
    if (flat.size() != static_cast<std::size_t>(m) * m) {
      throw InvalidArgument("game: matrix for (" + std::to_string(p.i) + ", " +
                            std::to_string(p.j) + ") has " +
                            std::to_string(flat.size()) + " entries, expected " +
                            std::to_string(m * m));
    }
    p.matrix.resize(m, m);
    for (int a = 0; a < m; ++a) {
      for (int b = 0; b < m; ++b) p.matrix(a, b) = flat[static_cast<std::size_t>(a) * m + b];
    }
    pairs.push_back(std::move(p));
  }
  return Game::FromPairs(n, m, std::move(pairs));
}

Scenario ScenarioFromJson(const std::string& text) {
  constexpr const char* kWhat = "scenario";
  const json doc = Parse(text, kWhat);
  if (!doc.is_object()) throw InvalidArgument("scenario: expected a JSON object");
  Scenario s;
  s.num_queues = GetOptional<int>(doc, "n", kWhat);
  s.runways = GetOptional<int>(doc, "r", kWhat);
  s.rho = GetOptional<double>(doc, "rho", kWhat);
  s.delta = GetOptional<double>(doc, "delta", kWhat);
  if (doc.contains("rates")) {
    const json& rates = doc.at("rates");
    if (rates.is_array()) {
      s.rates = Get<std::vector<double>>(doc, "rates", kWhat);
    } else if (rates.is_object()) {
      s.rate_seed = Get<std::uint64_t>(rates, "seed", kWhat);
      s.rate_low = GetOptional<double>(rates, "low", kWhat);
      s.rate_high = GetOptional<double>(rates, "high", kWhat);
    } else {
      throw InvalidArgument("scenario: 'rates' must be an array or an object");
    }
  }
  return s;
}

AtmConfig ResolveScenario(const Scenario& scenario) {
  if (!scenario.num_queues || !scenario.runways) {
    throw InvalidConfig("scenario needs both n and r");
  }
  AtmConfig config;
  config.num_queues = *scenario.num_queues;
  config.runways = *scenario.runways;
  if (scenario.rho) config.rho = *scenario.rho;
  if (scenario.delta) config.delta = *scenario.delta;
  if (config.num_queues < 2) throw InvalidConfig("need at least 2 queues");
  if (scenario.rates) {
    config.rates = *scenario.rates;
  } else if (scenario.rate_seed) {
    Rng rng(*scenario.rate_seed);
    config.rates = SampleRates(config.num_queues, rng,
                               scenario.rate_low.value_or(kDefaultRateLow),
                               scenario.rate_high.value_or(kDefaultRateHigh));
  } else {
    config.rates.assign(config.num_queues, 1.0);
  }
  config.Validate();
  return config;
}

std::string ScenarioToJson(const AtmConfig& config) {
  return Dump({{"n", config.num_queues},
               {"r", config.runways},
               {"rho", config.rho},
               {"delta", config.delta},
               {"rates", config.rates}});
}

std::string SolutionToJson(const SolutionReport& report) {
  json doc = {{"algorithm", report.algorithm},
              {"objective", ObjectiveToJson(report.objective)},
              {"J", report.value},
              {"costs", ToVector(report.costs)},
              {"violation", report.violation},
              {"solver_time_s", report.solver_time_s},
              {"total_time_s", report.total_time_s},
              {"seed", report.seed}};
  if (report.gamma) {
    doc["gamma"] = *report.gamma;
    doc["num_equilibria"] = report.num_equilibria;
    doc["equilibria"] = report.equilibria;
  }
  if (report.z) doc["z"] = *report.z;
  return Dump(doc);
}

std::string BenchConfigToJson(const BenchConfig& config) {
  std::vector<std::string> algorithms;
  for (Algorithm a : config.algorithms) algorithms.push_back(ToString(a));
  return Dump({{"rho", config.rho},
               {"delta", config.delta},
               {"fairness_delta", config.fairness_delta},
               {"rate_low", config.rate_low},
               {"rate_high", config.rate_high},
               {"restarts", config.nash.restarts},
               {"tol", config.nash.tol},
               {"max_iterations", config.nash.max_iterations},
               {"dedupe_tol", config.nash.dedupe_tol},
               {"polish_interval", config.nash.polish_interval},
               {"ce_cap", config.ce_cap},
               {"enumeration_cap", config.enumeration_cap},
               {"algorithms", algorithms}});
}

BenchConfig BenchConfigFromJson(const std::string& text, BenchConfig base) {
  constexpr const char* kWhat = "bench config";
  const json doc = Parse(text, kWhat);
  if (!doc.is_object()) throw InvalidArgument("bench config: expected a JSON object");
  auto set = [&]<class T>(const char* key, T* field) {
    if (auto v = GetOptional<T>(doc, key, kWhat)) *field = *v;
  };
  set("rho", &base.rho);
  set("delta", &base.delta);
  set("fairness_delta", &base.fairness_delta);
  set("rate_low", &base.rate_low);
  set("rate_high", &base.rate_high);
  set("restarts", &base.nash.restarts);
  set("tol", &base.nash.tol);
  set("max_iterations", &base.nash.max_iterations);
  set("dedupe_tol", &base.nash.dedupe_tol);
  set("polish_interval", &base.nash.polish_interval);
  set("ce_cap", &base.ce_cap);
  set("enumeration_cap", &base.enumeration_cap);
  if (auto names = GetOptional<std::vector<std::string>>(doc, "algorithms", kWhat)) {
    base.algorithms.clear();
    for (const std::string& name : *names) base.algorithms.push_back(ParseAlgorithm(name));
  }
  return base;
}

std::string ManifestToJson(const Dataset& dataset, const ManifestInfo& info) {
  json settings = json::array();
  for (const Setting& s : dataset.settings) {
    settings.push_back({{"n", s.num_queues},
                        {"r", s.runways},
                        {"m", s.num_actions()},
                        {"joint_actions", s.joint_actions()}});
  }
  json trials = json::array();
  for (const TrialRecord& rec : dataset.records) {
    json fingerprints = json::array();
    for (const AlgorithmResult& r : rec.results) fingerprints.push_back(r.game_fingerprint);
    trials.push_back({{"n", rec.setting.num_queues},
                      {"r", rec.setting.runways},
                      {"trial", rec.trial},
                      {"seed", rec.seed},
                      {"rates", rec.rates},
                      {"game_fingerprints", fingerprints}});
  }
  const unsigned hw = std::thread::hardware_concurrency();
  json doc = {
      {"version", VersionString()},
      {"base_seed", dataset.base_seed},
      {"trials_per_setting", dataset.trials_per_setting},
      {"config", json::parse(BenchConfigToJson(dataset.config))},
      {"settings", settings},
      {"trials", trials},
      {"threads", info.threads},
      {"mask_timing", info.mask_timing},
      {"quantile_method", "type 7 (linear interpolation between order statistics)"},
      {"timing_clock", "steady_clock wall time; solver time excludes assembly"},
      {"hardware", "hardware_concurrency=" + std::to_string(hw) +
                       "; timings are wall-clock and machine dependent"},
      {"files", info.files}};
  return Dump(doc);
}

std::string ReadTextFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void WriteTextFile(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  out << text;
  out.flush();
  if (!out) throw Error("failed writing " + path.string());
}

}  // namespace rrce
