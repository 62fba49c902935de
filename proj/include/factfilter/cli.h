// Copyright 2026 The FactFilter Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// The factfilter command line: one subcommand per pipeline stage.

#ifndef FACTFILTER_CLI_H_
#define FACTFILTER_CLI_H_

#include <iosfwd>
#include <string>
#include <vector>

namespace factfilter {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;    // bad arguments or configuration
inline constexpr int kExitData = 2;     // malformed, inconsistent or degenerate data
inline constexpr int kExitBackend = 3;  // model backend failures

// `args` excludes the program name. Help, progress and errors go to `log`;
// data is written only to the files named by the arguments, each next to a
// "<output>.config.json" echo of the resolved options.
int run_cli(const std::vector<std::string>& args, std::ostream& log);
int run_cli(int argc, const char* const* argv);

}  // namespace factfilter

#endif  // FACTFILTER_CLI_H_
