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

// Dense two-phase primal simplex.
//
// Every LP in the library goes through here: uncertainty-set maximizations,
// verifier minimizations, solution-set support LPs and branch-and-bound node
// relaxations. Problems are desk-sized, so a full tableau is fine.

#ifndef AARLCP_LP_HPP_
#define AARLCP_LP_HPP_

#include <cstddef>
#include <limits>
#include <vector>

#include "aarlcp/core.hpp"

namespace aarlcp {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

enum class Relation { kLessEqual, kEqual, kGreaterEqual };

struct LpRow {
  Vector coeffs;
  Relation relation = Relation::kLessEqual;
  double rhs = 0.0;
};

/// maximize objective . x  s.t.  rows,  lower <= x <= upper.
/// Variables default to x >= 0.
struct LpModel {
  std::size_t num_vars = 0;
  Vector objective;
  std::vector<LpRow> rows;
  Vector lower;
  Vector upper;

  LpModel() = default;
  explicit LpModel(std::size_t n)
      : num_vars(n), objective(n, 0.0), lower(n, 0.0), upper(n, kInfinity) {}

  void add_row(Vector coeffs, Relation relation, double rhs);
  void set_bounds(std::size_t var, double lo, double hi);
  void set_free(std::size_t var) { set_bounds(var, -kInfinity, kInfinity); }
  void fix(std::size_t var, double value) { set_bounds(var, value, value); }

  /// Largest violation of rows and bounds at x.
  double max_violation(const Vector& x) const;
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

const char* to_string(LpStatus status);

struct LpResult {
  LpStatus status = LpStatus::kInfeasible;
  double value = 0.0;   // valid when kOptimal
  Vector point;         // valid when kOptimal
  std::size_t pivots = 0;
};

/// Throws Error(kNumericalFailure) when the pivot budget
/// 50 * (rows + cols) is exhausted.
LpResult lp_solve(const LpModel& model, double tol = 1e-9);

/// Ignores the objective; returns kOptimal with value 0 or kInfeasible.
LpResult lp_feasible(const LpModel& model, double tol = 1e-9);

}  // namespace aarlcp

#endif  // AARLCP_LP_HPP_
