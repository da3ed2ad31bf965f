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

#ifndef AARLCP_REPORT_HPP_
#define AARLCP_REPORT_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "aarlcp/core.hpp"

namespace aarlcp {

/// Outcome of certifying one candidate policy.
struct VerifyReport {
  std::vector<std::size_t> support;  // {i : r_i > zero tol}, 0-based
  /// max |M_i r + q_i| over the support (N_i s added for mixed problems).
  double nominal_residual = 0.0;
  /// max_j max_i |(M_i D + T_i) v^j| over the support.
  double span_residual = 0.0;
  /// Mixed problems only: |V r + W s + p| and max_j |(V D + W E + P) v^j|.
  double equality_residual = 0.0;
  double equality_span_residual = 0.0;
  /// Per-row minima of z_i(u) and w_i(u) over U.
  Vector min_decision;
  Vector min_slack;
  std::vector<std::string> violations;

  bool verified() const noexcept { return violations.empty(); }
};

enum class SolveStatus { kFeasible, kInfeasible, kNumericalFailure };

const char* to_string(SolveStatus status);

struct SolveReport {
  SolveStatus status = SolveStatus::kInfeasible;
  std::optional<Policy> policy;
  std::size_t nodes_explored = 0;
  std::size_t lp_calls = 0;
  std::optional<VerifyReport> verification;
  Tolerances tolerances;
  std::string message;
};

}  // namespace aarlcp

#endif  // AARLCP_REPORT_HPP_
