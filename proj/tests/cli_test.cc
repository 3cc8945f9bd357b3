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

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "rrce/cli.h"
#include "rrce/errors.h"
#include "rrce/io.h"

namespace rrce {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run Cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  Run run;
  run.code = RunCli(args, out, err);
  run.out = out.str();
  run.err = err.str();
  return run;
}

fs::path TempDir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("rrce_cli_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

json ReadJson(const fs::path& path) { return json::parse(ReadTextFile(path)); }

TEST_CASE("size report") {
  CHECK(Cli({"size-report", "--n", "2", "--m", "2"}).out == "nash: 6, ce: 33\n");
  CHECK(Cli({"size-report", "--n", "7", "--m", "8"}).out == "nash: 63, ce: 4195649\n");
  CHECK(Cli({"size-report", "--n", "0", "--m", "2"}).code == kExitBadArguments);
  CHECK(Cli({"size-report", "--n", "64", "--m", "1024"}).code == kExitBadArguments);
}

TEST_CASE("range parsing") {
  CHECK(ParseRange("2..7") == std::pair{2, 7});
  CHECK(ParseRange("3") == std::pair{3, 3});
  CHECK_THROWS_AS(ParseRange("7..2"), InvalidArgument);
  CHECK_THROWS_AS(ParseRange("a..b"), InvalidArgument);
  CHECK_THROWS_AS(ParseRange("2.."), InvalidArgument);
}

TEST_CASE("argument errors and help") {
  CHECK(Cli({}).code == kExitBadArguments);
  CHECK(Cli({"frobnicate"}).code == kExitBadArguments);
  CHECK(Cli({"solve", "--algo", "ce"}).code == kExitBadArguments);
  CHECK(Cli({"gen-atm", "--n", "2", "--r", "1", "--rates", "1", "1", "--rate-seed", "3",
             "--out", "x.json"})
            .code == kExitBadArguments);
  const Run help = Cli({"--help"});
  CHECK(help.code == kExitOk);
  CHECK(help.out.find("size-report") != std::string::npos);
  CHECK(Cli({"--version"}).code == kExitOk);
  CHECK(Cli({"solve", "--game", "/nonexistent.json", "--algo", "ce", "--out", "x.json"}).code ==
        kExitBadArguments);
}

TEST_CASE("two queue game end to end") {
  const fs::path dir = TempDir("chicken");
  const std::string game = (dir / "game.json").string();
  REQUIRE(Cli({"gen-atm", "--n", "2", "--r", "1", "--out", game}).code == kExitOk);
  AtmConfig config;
  config.rates = {1.0, 1.0};
  CHECK(GameFromJson(ReadTextFile(game)) == BuildQueueGame(config));

  for (const std::string algo : {"ce", "rrce-brute", "rrce-random", "nash"}) {
    CAPTURE(algo);
    const std::string out = (dir / (algo + ".json")).string();
    const Run run = Cli({"solve", "--game", game, "--algo", algo, "--out", out});
    REQUIRE(run.code == kExitOk);
    const json doc = ReadJson(out);
    CHECK(doc["algorithm"] == algo);
    CHECK(doc["J"].get<double>() == doctest::Approx(5.0).epsilon(1e-6));
    CHECK(doc["violation"].get<double>() <= 1e-8);
  }
  const json ce = ReadJson(dir / "ce.json");
  CHECK(ce["z"].size() == 4);
  const json rrce = ReadJson(dir / "rrce-brute.json");
  CHECK(rrce["num_equilibria"].get<int>() >= 2);

  const std::string sum = (dir / "sum.json").string();
  REQUIRE(Cli({"solve", "--game", game, "--algo", "ce", "--objective", "sum", "--out", sum})
              .code == kExitOk);
  CHECK(ReadJson(sum)["J"].get<double>() == doctest::Approx(5.0).epsilon(1e-6));
  fs::remove_all(dir);
}

TEST_CASE("scenario files and rate sampling") {
  const fs::path dir = TempDir("scenario");
  WriteTextFile(dir / "s.json", R"({"n": 3, "r": 2, "rates": {"seed": 9}})");
  REQUIRE(Cli({"gen-atm", "--scenario", (dir / "s.json").string(), "--rho", "4", "--out",
               (dir / "g.json").string(), "--scenario-out", (dir / "resolved.json").string()})
              .code == kExitOk);
  const AtmConfig resolved = ResolveScenario(ScenarioFromJson(ReadTextFile(dir / "resolved.json")));
  CHECK(resolved.rho == 4.0);
  Rng rng(9);
  CHECK(resolved.rates == SampleRates(3, rng));
  CHECK(GameFromJson(ReadTextFile(dir / "g.json")) == BuildQueueGame(resolved));
  fs::remove_all(dir);
}

TEST_CASE("cap exceeded exits with its own code") {
  const fs::path dir = TempDir("cap");
  const std::string game = (dir / "big.json").string();
  REQUIRE(Cli({"gen-atm", "--n", "7", "--r", "3", "--rate-seed", "1", "--out", game}).code ==
          kExitOk);
  const Run ce = Cli({"solve", "--game", game, "--algo", "ce", "--out",
                      (dir / "ce.json").string()});
  CHECK(ce.code == kExitCapExceeded);
  CHECK(!fs::exists(dir / "ce.json"));
  const Run rrce = Cli({"solve", "--game", game, "--algo", "rrce-brute", "--out",
                        (dir / "rrce.json").string()});
  CHECK(rrce.code == kExitOk);
  fs::remove_all(dir);
}

TEST_CASE("bench output does not depend on thread count") {
  const fs::path dir = TempDir("bench");
  for (const std::string threads : {"1", "3"}) {
    const Run run = Cli({"bench", "--n-range", "2..3", "--r-range", "1..2", "--trials", "2",
                         "--seed", "5", "--threads", threads, "--mask-timing", "--out-dir",
                         (dir / threads).string()});
    REQUIRE(run.code == kExitOk);
    for (const char* file : {"results.csv", "plot_time.csv", "plot_quality.csv", "manifest.json"}) {
      CHECK(fs::exists(dir / threads / file));
    }
  }
  CHECK(ReadTextFile(dir / "1" / "results.csv") == ReadTextFile(dir / "3" / "results.csv"));
  CHECK(ReadTextFile(dir / "1" / "plot_quality.csv") ==
        ReadTextFile(dir / "3" / "plot_quality.csv"));
  const json manifest = ReadJson(dir / "3" / "manifest.json");
  CHECK(manifest["threads"] == 3);
  CHECK(manifest["trials"].size() == 8);
  CHECK(Cli({"bench", "--trials", "0", "--out-dir", dir.string()}).code == kExitBadArguments);
  CHECK(Cli({"bench", "--algos", "lemke", "--out-dir", dir.string()}).code ==
        kExitBadArguments);
  fs::remove_all(dir);
}

}  // namespace
}  // namespace rrce
