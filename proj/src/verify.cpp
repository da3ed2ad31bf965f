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

#include "aarlcp/verify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "aarlcp/error.hpp"
#include "aarlcp/lp.hpp"
#include "aarlcp/milp.hpp"

namespace aarlcp {

const char* to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::kFeasible:
      return "feasible";
    case SolveStatus::kInfeasible:
      return "infeasible";
    case SolveStatus::kNumericalFailure:
      return "numerical-failure";
  }
  return "?";
}

double min_over_set(const Polyhedron& set, std::span<const double> coeffs,
                    double offset, double tol) {
  const std::size_t k = set.dim();
  if (coeffs.size() != k) {
    throw Error(ErrorCode::kDimensionMismatch, "coefficient vector must have length k");
  }
  LpModel lp(k);
  for (std::size_t c = 0; c < k; ++c) {
    lp.set_free(c);
    lp.objective[c] = -coeffs[c];
  }
  for (std::size_t j = 0; j < set.num_rows(); ++j) {
    const auto row = set.lhs.row(j);
    lp.add_row(Vector(row.begin(), row.end()), Relation::kGreaterEqual, set.rhs[j]);
  }
  const LpResult res = lp_solve(lp, tol);
  if (res.status != LpStatus::kOptimal) {
    throw Error(ErrorCode::kNumericalFailure,
                std::string("minimization over the uncertainty set is ") +
                    to_string(res.status));
  }
  return offset - res.value;
}

namespace {

std::string row_label(std::size_t i) { return "row " + std::to_string(i + 1); }

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

}  // namespace

VerifyReport verify_policy(const Instance& inst, const LinHullBasis& basis,
                           const Policy& policy, const Tolerances& tol) {
  inst.check_dimensions();
  const std::size_t n = inst.n();
  const std::size_t k = inst.k();
  if (policy.slope.rows() != n || policy.slope.cols() != k ||
      policy.intercept.size() != n) {
    throw Error(ErrorCode::kDimensionMismatch, "policy shape does not match the instance");
  }
  if (inst.mixed && !policy.y) {
    throw Error(ErrorCode::kDimensionMismatch, "mixed instance needs a policy with a y rule");
  }
  if (!inst.mixed && policy.y) {
    throw Error(ErrorCode::kDimensionMismatch, "policy has a y rule but the instance is not mixed");
  }
  const MixedExtension* mx = inst.mixed ? &*inst.mixed : nullptr;
  const std::size_t m = mx ? mx->m() : 0;
  if (mx && (policy.y->intercept.size() != m || policy.y->slope.rows() != m ||
             policy.y->slope.cols() != k)) {
    throw Error(ErrorCode::kDimensionMismatch, "y rule shape does not match the instance");
  }

  VerifyReport rep;
  for (std::size_t i = 0; i < n; ++i) {
    if (policy.intercept[i] < 0.0) {
      rep.violations.push_back("intercept negative on " + row_label(i));
    }
    if (policy.intercept[i] > tol.zero) rep.support.push_back(i);
  }
  for (std::size_t i = 0; i < std::min(inst.here_and_now, n); ++i) {
    if (norm_inf(policy.slope.row(i)) > tol.feas) {
      rep.violations.push_back("here-and-now " + row_label(i) + " of the slope is nonzero");
    }
  }

  // w(u) = G u + w0 with G = M D + N E + T and w0 = M r + N s + q.
  Matrix slack_slope = mat_mul(inst.matrix, policy.slope);
  Vector slack_offset = mat_vec(inst.matrix, policy.intercept);
  for (std::size_t i = 0; i < n; ++i) {
    slack_offset[i] += inst.offset[i];
    for (std::size_t c = 0; c < k; ++c) slack_slope(i, c) += inst.perturbation(i, c);
  }
  if (mx) {
    const Matrix ne = mat_mul(mx->y_coupling, policy.y->slope);
    const Vector ns = mat_vec(mx->y_coupling, policy.y->intercept);
    for (std::size_t i = 0; i < n; ++i) {
      slack_offset[i] += ns[i];
      for (std::size_t c = 0; c < k; ++c) slack_slope(i, c) += ne(i, c);
    }
  }

  for (std::size_t i : rep.support) {
    const double res = std::abs(slack_offset[i]);
    rep.nominal_residual = std::max(rep.nominal_residual, res);
    if (res > tol.feas) {
      rep.violations.push_back("nominal complementarity residual " + fmt(res) + " on " +
                               row_label(i));
    }
    for (std::size_t j = 0; j < basis.dim(); ++j) {
      const double sres = std::abs(dot(slack_slope.row(i), basis.vectors[j]));
      rep.span_residual = std::max(rep.span_residual, sres);
      if (sres > tol.feas) {
        rep.violations.push_back("span complementarity residual " + fmt(sres) + " on " +
                                 row_label(i) + ", basis vector " + std::to_string(j + 1));
      }
    }
  }

  rep.min_decision.resize(n);
  rep.min_slack.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    rep.min_decision[i] =
        min_over_set(inst.uncertainty, policy.slope.row(i), policy.intercept[i], tol.lp);
    rep.min_slack[i] =
        min_over_set(inst.uncertainty, slack_slope.row(i), slack_offset[i], tol.lp);
    if (rep.min_decision[i] < -tol.feas) {
      rep.violations.push_back("z(u) negative on " + row_label(i) + ": minimum " +
                               fmt(rep.min_decision[i]));
    }
    if (rep.min_slack[i] < -tol.feas) {
      rep.violations.push_back("M z(u) + q + T u negative on " + row_label(i) +
                               ": minimum " + fmt(rep.min_slack[i]));
    }
  }

  if (mx) {
    // V z(u) + W y(u) + p + P u = (V D + W E + P) u + V r + W s + p
    Matrix eq_slope = mat_mul(mx->eq_z, policy.slope);
    const Matrix we = mat_mul(mx->eq_y, policy.y->slope);
    Vector eq_offset = mat_vec(mx->eq_z, policy.intercept);
    const Vector ws = mat_vec(mx->eq_y, policy.y->intercept);
    for (std::size_t t = 0; t < m; ++t) {
      eq_offset[t] += ws[t] + mx->eq_offset[t];
      for (std::size_t c = 0; c < k; ++c) {
        eq_slope(t, c) += we(t, c) + mx->eq_perturbation(t, c);
      }
    }
    rep.equality_residual = norm_inf(eq_offset);
    if (rep.equality_residual > tol.feas) {
      rep.violations.push_back("mixed equality residual " + fmt(rep.equality_residual));
    }
    for (std::size_t t = 0; t < m; ++t) {
      for (const Vector& v : basis.vectors) {
        rep.equality_span_residual =
            std::max(rep.equality_span_residual, std::abs(dot(eq_slope.row(t), v)));
      }
    }
    if (rep.equality_span_residual > tol.feas) {
      rep.violations.push_back("mixed equality span residual " +
                               fmt(rep.equality_span_residual));
    }
    if (!mx->y_adjustable && norm_inf(policy.y->slope.entries()) > tol.feas) {
      rep.violations.push_back("y is not adjustable but its slope is nonzero");
    }
  }
  return rep;
}

std::vector<std::vector<std::uint8_t>> supports_by_popcount(std::size_t n) {
  std::vector<std::vector<std::uint8_t>> out;
  for (std::size_t pc = 0; pc <= n; ++pc) {
    // lexicographic k-combinations of {0..n-1}
    std::vector<std::size_t> comb(pc);
    for (std::size_t i = 0; i < pc; ++i) comb[i] = i;
    for (;;) {
      std::vector<std::uint8_t> x(n, 0);
      for (std::size_t i : comb) x[i] = 1;
      out.push_back(std::move(x));
      std::size_t pos = pc;
      while (pos > 0 && comb[pos - 1] == n - pc + pos - 1) --pos;
      if (pos == 0) break;
      ++comb[pos - 1];
      for (std::size_t i = pos; i < pc; ++i) comb[i] = comb[i - 1] + 1;
    }
  }
  return out;
}

SolveReport oracle_enumerate(const Instance& inst, const LinHullBasis& basis,
                             const OracleOptions& opts, OracleTally* tally) {
  inst.check_dimensions();
  const std::size_t n = inst.n();
  if (n > opts.max_n) {
    throw Error(ErrorCode::kOracleLimitExceeded,
                "oracle enumeration limited to n <= " + std::to_string(opts.max_n) +
                    ", instance has n = " + std::to_string(n));
  }
  const NodeLpBuilder builder(inst, basis);
  SolveReport rep;
  rep.tolerances = opts.tol;
  OracleTally local;
  for (const std::vector<std::uint8_t>& x : supports_by_popcount(n)) {
    const NodeState leaf = NodeState::leaf(x);
    ++local.examined;
    ++rep.lp_calls;
    const LpResult lp = lp_feasible(builder.build(leaf), opts.tol.lp);
    if (lp.status != LpStatus::kOptimal) {
      if (tally) {
        ++rep.lp_calls;
        const LpResult eq = lp_feasible(builder.build_equalities_only(leaf), opts.tol.lp);
        if (eq.status == LpStatus::kOptimal) {
          ++local.nonnegativity_infeasible;
        } else {
          ++local.equality_infeasible;
        }
      }
      continue;
    }
    local.first_feasible = x;
    rep.policy = builder.extract_policy(lp.point, x, opts.tol.zero);
    rep.verification = verify_policy(inst, basis, *rep.policy, opts.tol);
    if (rep.verification->verified()) {
      rep.status = SolveStatus::kFeasible;
    } else {
      rep.status = SolveStatus::kNumericalFailure;
      rep.message = "support LP feasible but its policy failed verification: " +
                    rep.verification->violations.front();
    }
    break;
  }
  if (!rep.policy) {
    rep.status = SolveStatus::kInfeasible;
    rep.message = "no support admits an affine robust solution";
  }
  rep.nodes_explored = local.examined;
  if (tally) *tally = std::move(local);
  return rep;
}

}  // namespace aarlcp
