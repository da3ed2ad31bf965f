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

// JSON files for instances and policies.
//
// Instance: {"n","k","g","h","M","T","Theta","q","zeta", optional "mixed":
//   {"m","V","W","N","p","P","y_adjustable"}}, matrices as arrays of rows.
// Policy: {"status", "D","r","x", optional "E","s", "diagnostics":
//   {"nodes_explored","lp_calls","tolerances":{"zero","feas","lp"}}}.
// Doubles are written in shortest round-trip form, so a write/read cycle is
// bit-exact.

#ifndef AARLCP_IO_HPP_
#define AARLCP_IO_HPP_

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "aarlcp/core.hpp"
#include "aarlcp/report.hpp"

namespace aarlcp {

/// Throws kParse on malformed JSON, missing keys or non-finite numbers and
/// kDimensionMismatch when array shapes disagree with the declared sizes.
Instance parse_instance(std::string_view text);
std::string dump_instance(const Instance& inst);

struct PolicyFile {
  SolveStatus status = SolveStatus::kInfeasible;
  std::optional<Policy> policy;  // present iff status is feasible
  std::size_t nodes_explored = 0;
  std::size_t lp_calls = 0;
  Tolerances tolerances;
};

PolicyFile to_policy_file(const SolveReport& report);

/// Throws kParse on malformed content and kInvalidArgument when the policy
/// breaks an invariant (negative intercept, non-binary support entry).
PolicyFile parse_policy(std::string_view text);
std::string dump_policy(const PolicyFile& file);

/// Throws kParse if the file cannot be read.
std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace aarlcp

#endif  // AARLCP_IO_HPP_
