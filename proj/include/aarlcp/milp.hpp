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

// Mixed-integer feasibility model for affine robust LCP solutions.
//
// Find x in {0,1}^n, D, r >= 0, A >= 0, C >= 0 (and s, E for mixed LCPs) with
//
//   r_i <= b x_i                                  support bound
//   0 <= M_i r + q_i <= b (1 - x_i)               nominal complementarity
//   |(M_i D + T_i) v^j| <= b (1 - x_i)            span complementarity
//   zeta' A_i + r_i >= 0,   Theta' A_i = D_i'     z(u) >= 0 on U (dual form)
//   zeta' C_i + M_i r + q_i >= 0,
//   Theta' C_i = (M_i D + T_i)'                   w(u) >= 0 on U (dual form)
//   D_i = 0 for the first h rows                  here-and-now rows
//
// The big-M form exists only for export. The branch-and-bound solver keeps
// b out of the picture: a node fixes x_i = 1 by adding the equalities
// M_i r + q_i = 0 and (M_i D + T_i) v^j = 0, and x_i = 0 by pinning r_i = 0.

#ifndef AARLCP_MILP_HPP_
#define AARLCP_MILP_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "aarlcp/core.hpp"
#include "aarlcp/linhull.hpp"
#include "aarlcp/lp.hpp"
#include "aarlcp/report.hpp"

namespace aarlcp {

enum class ConstraintTag {
  kSupportBound,            // r_i <= b x_i
  kNominalComplementarity,  // b (1 - x_i) >= M_i r + q_i >= 0
  kSpanComplementarity,     // |(M_i D + T_i) v^j| <= b (1 - x_i)
  kDecisionDualObjective,   // zeta' A_i + r_i >= 0
  kDecisionDualEquality,    // Theta' A_i = D_i'
  kSlackDualObjective,      // zeta' C_i + M_i r + q_i >= 0
  kSlackDualEquality,       // Theta' C_i = (M_i D + T_i)'
  kHereAndNow,              // D_i = 0, i < h
  kMixedEquality,           // V r + W s + p = 0
  kMixedSpan,               // (V D + W E + P) v^j = 0
};

inline constexpr std::size_t kNumConstraintTags = 10;

const char* to_string(ConstraintTag tag);

/// Index map of the model's variable blocks:
/// x (n), D (n x k), r (n), A (g x n), C (g x n), s (m), E (m x k, adjustable y only).
class VariableLayout {
 public:
  VariableLayout() = default;
  VariableLayout(std::size_t n, std::size_t k, std::size_t g, std::size_t m,
                 bool adjustable_y);

  std::size_t support(std::size_t i) const { return i; }
  std::size_t slope(std::size_t i, std::size_t c) const { return slope_ + i * k_ + c; }
  std::size_t intercept(std::size_t i) const { return intercept_ + i; }
  std::size_t decision_dual(std::size_t row, std::size_t i) const {
    return decision_dual_ + row * n_ + i;
  }
  std::size_t slack_dual(std::size_t row, std::size_t i) const {
    return slack_dual_ + row * n_ + i;
  }
  std::size_t y_intercept(std::size_t t) const { return y_intercept_ + t; }
  std::size_t y_slope(std::size_t t, std::size_t c) const { return y_slope_ + t * k_ + c; }

  std::size_t total() const noexcept { return total_; }
  std::size_t num_continuous() const noexcept { return total_ - n_; }
  bool adjustable_y() const noexcept { return adjustable_y_; }

  /// LP-file name: x1, D1_1, r1, A1_1, C1_1, s1, E1_1 (1-based).
  std::string name(std::size_t var) const;

 private:
  std::size_t n_ = 0, k_ = 0, g_ = 0, m_ = 0;
  bool adjustable_y_ = false;
  std::size_t slope_ = 0, intercept_ = 0, decision_dual_ = 0, slack_dual_ = 0;
  std::size_t y_intercept_ = 0, y_slope_ = 0, total_ = 0;
};

struct LinearTerm {
  std::size_t var;
  double coeff;
};

struct MilpConstraint {
  ConstraintTag tag;
  std::string name;
  std::vector<LinearTerm> terms;
  Relation relation;
  double rhs;
};

struct MilpVariable {
  std::string name;
  double lower = 0.0;
  double upper = kInfinity;
  bool binary = false;
};

struct MilpModel {
  VariableLayout layout;
  std::vector<MilpVariable> variables;
  std::vector<MilpConstraint> constraints;
  double big_m = 0.0;

  std::size_t num_binaries() const;
  std::size_t count(ConstraintTag tag) const;
};

/// 1e4 * max(1, |M|, |q|, |T|, |zeta|), all infinity norms.
double default_big_m(const Instance& inst);

MilpModel build_milp(const Instance& inst, const LinHullBasis& basis, double big_m);

enum class ExportFormat { kLp, kMps };

/// Accepts "lp" or "mps"; throws kInvalidArgument otherwise.
ExportFormat parse_export_format(std::string_view tag);

std::string export_milp(const MilpModel& model, ExportFormat format);

/// Model read back from LP or MPS text (minimization, feasibility only).
struct ParsedMilp {
  struct Row {
    std::string name;
    std::vector<LinearTerm> terms;
    Relation relation;
    double rhs;
  };
  std::vector<std::string> names;
  std::unordered_map<std::string, std::size_t> index;
  std::vector<Row> rows;
  Vector lower;
  Vector upper;
  std::vector<bool> binary;

  std::size_t num_binaries() const;
  /// Continuous LP with the binaries fixed to the given 0/1 values (in the
  /// order the binaries appear among the variables).
  LpModel fix_binaries(std::span<const std::uint8_t> values) const;
};

/// Throws kParse on malformed text.
ParsedMilp parse_lp_text(std::string_view text);
ParsedMilp parse_mps_text(std::string_view text);

/// Branch-and-bound node: x_i in {0, 1} or unfixed (-1).
struct NodeState {
  std::vector<std::int8_t> fixed;
  std::size_t depth = 0;

  static NodeState root(std::size_t n) { return {std::vector<std::int8_t>(n, -1), 0}; }
  static NodeState leaf(std::span<const std::uint8_t> support);
  NodeState with(std::size_t i, std::int8_t value) const;
};

/// Builds the exact-indicator LP of a node. The always-valid rows (the dual
/// nonnegativity systems, M_i r + q_i >= 0, here-and-now pins and the mixed
/// equalities) are assembled once; fixed indices add their indicator rows.
class NodeLpBuilder {
 public:
  NodeLpBuilder(const Instance& inst, const LinHullBasis& basis);

  const VariableLayout& layout() const noexcept { return layout_; }

  LpModel build(const NodeState& node) const;

  /// Only r >= 0, the indicator rows, the here-and-now pins and the mixed
  /// equalities; drops the nonnegativity systems. Used to classify why a
  /// support fails.
  LpModel build_equalities_only(const NodeState& node) const;

  /// Reads (D, r, E, s) from an LP point. Intercepts at or below zero_tol
  /// are truncated to zero.
  Policy extract_policy(const Vector& point, std::span<const std::uint8_t> support,
                        double zero_tol) const;

 private:
  void add_indicator_rows(LpModel& lp, const NodeState& node) const;
  Vector nominal_row(std::size_t i, double& constant) const;
  Vector span_row(std::size_t i, const Vector& v, double& constant) const;

  Instance inst_;
  LinHullBasis basis_;
  VariableLayout layout_;
  LpModel base_;
  LpModel equalities_base_;
};

enum class Branching { kHeuristic, kIndexOrder };

struct BnbOptions {
  Tolerances tol;
  /// 0 selects the default 2^(min(n,20)+1) - 1, the size of a full tree.
  std::size_t node_limit = 0;
  Branching branching = Branching::kHeuristic;
  bool parallel = false;
  unsigned threads = 0;  // 0: hardware concurrency
};

std::size_t default_node_limit(std::size_t n);

/// Depth-first branch-and-bound over the support vector x. Returns kFeasible
/// only with a policy that passed verify_policy; kInfeasible only after the
/// whole tree was exhausted. Throws kNodeLimitExceeded or kNumericalFailure.
SolveReport bnb_solve(const Instance& inst, const LinHullBasis& basis,
                      const BnbOptions& opts = {});

/// Is {a >= 0 : zeta' a + offset >= 0, Theta' a = coeffs} nonempty?
/// This is the dual certificate of  min_{u in U} coeffs' u + offset >= 0.
bool dual_certificate_exists(const Polyhedron& set, std::span<const double> coeffs,
                             double offset, double tol);

}  // namespace aarlcp

#endif  // AARLCP_MILP_HPP_
