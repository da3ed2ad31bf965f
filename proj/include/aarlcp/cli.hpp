// Copyright 2026 The aarlcp Authors
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

// Command-line front end. Subcommands: validate, solve, verify, oracle,
// linhull, export. Exit codes: 0 success / feasible / verified,
// 1 infeasible / violations, 2 input error, 3 numerical failure or a
// resource limit.

#ifndef AARLCP_CLI_HPP_
#define AARLCP_CLI_HPP_

#include <ostream>

namespace aarlcp {

inline constexpr int kExitOk = 0;
inline constexpr int kExitNegative = 1;
inline constexpr int kExitInputError = 2;
inline constexpr int kExitNumerical = 3;

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace aarlcp

#endif  // AARLCP_CLI_HPP_
