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

// The `rrce` command line: solve, gen-atm, bench and size-report.

#ifndef RRCE_CLI_H_
#define RRCE_CLI_H_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace rrce {

inline constexpr std::uint64_t kDefaultSeed = 1729;

enum ExitCode : int {
  kExitOk = 0,
  kExitError = 1,  // IO and other runtime failures
  kExitBadArguments = 2,
  kExitCapExceeded = 3,
  kExitSolverFailure = 4,
};

// Parses "A..B" (or a single "A") into an inclusive range.
std::pair<int, int> ParseRange(const std::string& text);

// args excludes the program name. Human-readable output goes to `out` and
// diagnostics to `err`; result documents go to files.
int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rrce

#endif  // RRCE_CLI_H_
