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

// Certificates for candidate policies and an exhaustive reference solver.
//
// A policy z(u) = D u + r with z(u) >= 0 and w(u) = M z(u) + q + T u >= 0 on U
// is a robust solution iff, on I = {i : r_i > 0},
//
//   M_I r + q_I = 0   and   (M_I D + T_I) v^j = 0 for every basis vector v^j.
//
// Nonnegativity is checked primally (one LP per row and side), which keeps
// this module independent of the dual rows the solvers use.

#ifndef AARLCP_VERIFY_HPP_
#define AARLCP_VERIFY_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "aarlcp/core.hpp"
#include "aarlcp/linhull.hpp"
#include "aarlcp/report.hpp"

namespace aarlcp {

/// min_{u in U} coeffs' u + offset. Throws kNumericalFailure if the LP is
/// unbounded or infeasible (U is assumed compact and nonempty).
double min_over_set(const Polyhedron& set, std::span<const double> coeffs,
                    double offset, double tol);

/// Handles mixed instances too when the policy carries a y rule.
VerifyReport verify_policy(const Instance& inst, const LinHullBasis& basis,
                           const Policy& policy, const Tolerances& tol = {});

struct OracleOptions {
  Tolerances tol;
  std::size_t max_n = 16;
};

struct OracleTally {
  std::size_t examined = 0;
  std::size_t equality_infeasible = 0;
  std::size_t nonnegativity_infeasible = 0;
  std::vector<std::uint8_t> first_feasible;  // empty if none
};

/// Supports in enumeration order: increasing popcount, then lexicographic
/// in the index sets.
std::vector<std::vector<std::uint8_t>> supports_by_popcount(std::size_t n);

/// Solves the fully fixed node LP for every x in supports_by_popcount order
/// and stops at the first feasible one. Throws kOracleLimitExceeded when
/// n > max_n.
SolveReport oracle_enumerate(const Instance& inst, const LinHullBasis& basis,
                             const OracleOptions& opts = {},
                             OracleTally* tally = nullptr);

}  // namespace aarlcp

#endif  // AARLCP_VERIFY_HPP_
