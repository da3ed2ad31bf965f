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

#include "aarlcp/psd.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "aarlcp/error.hpp"
#include "aarlcp/milp.hpp"
#include "aarlcp/verify.hpp"

namespace aarlcp {

const char* to_string(PsdStatus status) {
  switch (status) {
    case PsdStatus::kFeasible:
      return "feasible";
    case PsdStatus::kInfeasible:
      return "infeasible";
    case PsdStatus::kNotPsd:
      return "not-psd";
    case PsdStatus::kNumericalFailure:
      return "numerical-failure";
  }
  return "?";
}

namespace {

void require_square(const Matrix& m) {
  if (m.rows() != m.cols()) {
    throw Error(ErrorCode::kDimensionMismatch, "matrix must be square");
  }
}

}  // namespace

bool check_psd(const Matrix& m, double tol) {
  require_square(m);
  const std::size_t n = m.rows();
  Matrix s(n, n);
  double scale = 1.0;
  double trace = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      s(i, j) = 0.5 * (m(i, j) + m(j, i));
      scale = std::max(scale, std::abs(s(i, j)));
    }
    trace += std::abs(s(i, i));
  }
  const double threshold = tol * std::max(scale, trace);

  // Symmetric elimination, largest diagonal first. A PSD matrix never shows
  // a negative pivot, and once the remaining diagonal is ~0 the whole
  // remaining block must be ~0 too.
  std::vector<bool> active(n, true);
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t p = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (!active[i]) continue;
      if (s(i, i) < -threshold) return false;
      if (p == n || s(i, i) > s(p, p)) p = i;
    }
    if (s(p, p) <= threshold) {
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          if (active[i] && active[j] && std::abs(s(i, j)) > threshold) return false;
        }
      }
      return true;
    }
    active[p] = false;
    const double pivot = s(p, p);
    for (std::size_t i = 0; i < n; ++i) {
      if (!active[i]) continue;
      const double f = s(i, p) / pivot;
      for (std::size_t j = 0; j < n; ++j) {
        if (active[j]) s(i, j) -= f * s(p, j);
      }
    }
  }
  return true;
}

namespace {

// Tableau of  w - M z - e z0 = q  with columns w (0..n-1), z (n..2n-1), z0 (2n).
class LemkeTableau {
 public:
  LemkeTableau(const Matrix& m, const Vector& q)
      : n_(m.rows()), width_(2 * n_ + 1), cells_(n_ * width_, 0.0), rhs_(q), basis_(n_) {
    for (std::size_t i = 0; i < n_; ++i) {
      at(i, i) = 1.0;
      for (std::size_t j = 0; j < n_; ++j) at(i, n_ + j) = -m(i, j);
      at(i, 2 * n_) = -1.0;
      basis_[i] = i;
    }
  }

  std::size_t artificial() const { return 2 * n_; }
  std::size_t complement(std::size_t var) const { return var < n_ ? var + n_ : var - n_; }

  // Lexicographic minimum ratio row for the entering column, or n_ on a ray.
  std::size_t ratio_row(std::size_t col) const {
    double col_scale = 0.0;
    for (std::size_t i = 0; i < n_; ++i) col_scale = std::max(col_scale, std::abs(cell(i, col)));
    const double piv_tol = 1e-11 * std::max(1.0, col_scale);
    std::vector<std::size_t> rows;
    for (std::size_t i = 0; i < n_; ++i) {
      if (cell(i, col) > piv_tol) rows.push_back(i);
    }
    if (rows.empty()) return n_;
    // The artificial leaves as soon as it ties for the minimum ratio.
    double best = kInfinity;
    for (std::size_t i : rows) best = std::min(best, rhs_[i] / cell(i, col));
    const double tie = 1e-12 * std::max(1.0, std::abs(best));
    std::vector<std::size_t> tied;
    for (std::size_t i : rows) {
      if (rhs_[i] / cell(i, col) <= best + tie) tied.push_back(i);
    }
    for (std::size_t i : tied) {
      if (basis_[i] == artificial()) return i;
    }
    // Break remaining ties on the rows of the basis inverse (the w columns).
    for (std::size_t c = 0; c < n_ && tied.size() > 1; ++c) {
      double lo = kInfinity;
      for (std::size_t i : tied) lo = std::min(lo, cell(i, c) / cell(i, col));
      std::vector<std::size_t> keep;
      for (std::size_t i : tied) {
        if (cell(i, c) / cell(i, col) <= lo + 1e-12 * std::max(1.0, std::abs(lo))) {
          keep.push_back(i);
        }
      }
      tied = std::move(keep);
    }
    return tied.front();
  }

  // Returns the variable that left the basis.
  std::size_t pivot(std::size_t row, std::size_t col) {
    const double p = cell(row, col);
    for (std::size_t c = 0; c < width_; ++c) at(row, c) /= p;
    rhs_[row] /= p;
    for (std::size_t i = 0; i < n_; ++i) {
      if (i == row) continue;
      const double f = cell(i, col);
      if (f == 0.0) continue;
      for (std::size_t c = 0; c < width_; ++c) at(i, c) -= f * cell(row, c);
      rhs_[i] -= f * rhs_[row];
    }
    const std::size_t left = basis_[row];
    basis_[row] = col;
    return left;
  }

  Vector z() const {
    Vector out(n_, 0.0);
    for (std::size_t i = 0; i < n_; ++i) {
      if (basis_[i] >= n_ && basis_[i] < 2 * n_) out[basis_[i] - n_] = std::max(0.0, rhs_[i]);
    }
    return out;
  }

 private:
  double cell(std::size_t i, std::size_t c) const { return cells_[i * width_ + c]; }
  double& at(std::size_t i, std::size_t c) { return cells_[i * width_ + c]; }

  std::size_t n_;
  std::size_t width_;
  std::vector<double> cells_;
  Vector rhs_;
  std::vector<std::size_t> basis_;
};

double lcp_scale(const Matrix& m, const Vector& q, const Vector& z) {
  return std::max({1.0, norm_inf(q), norm_inf(m) * norm_inf(z)});
}

// Largest violation of 0 <= z, M z + q >= 0 and z'(M z + q) = 0.
double lcp_violation(const Matrix& m, const Vector& q, const Vector& z) {
  const Vector w = mat_vec(m, z);
  double worst = 0.0;
  double comp = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) {
    worst = std::max({worst, -z[i], -(w[i] + q[i])});
    comp += z[i] * (w[i] + q[i]);
  }
  return std::max(worst, std::abs(comp) / std::max(1.0, norm_inf(z)));
}

}  // namespace

std::optional<Vector> lemke_nominal(const Matrix& m, const Vector& q, double tol) {
  require_square(m);
  const std::size_t n = m.rows();
  if (q.size() != n) throw Error(ErrorCode::kDimensionMismatch, "q must have length n");
  if (!check_psd(m, tol)) {
    throw Error(ErrorCode::kInvalidArgument, "Lemke's method needs a PSD matrix");
  }
  if (n == 0 || *std::min_element(q.begin(), q.end()) >= 0.0) return Vector(n, 0.0);

  LemkeTableau tab(m, q);
  std::size_t first = 0;
  for (std::size_t i = 1; i < n; ++i) {
    if (q[i] < q[first]) first = i;
  }
  std::size_t entering = tab.complement(tab.pivot(first, tab.artificial()));
  const std::size_t cap = 50 * (n + 1) * (n + 1) + 1000;
  for (std::size_t iter = 0; iter < cap; ++iter) {
    const std::size_t row = tab.ratio_row(entering);
    if (row == n) return std::nullopt;
    const std::size_t left = tab.pivot(row, entering);
    if (left == tab.artificial()) {
      Vector z = tab.z();
      if (lcp_violation(m, q, z) > tol * lcp_scale(m, q, z)) {
        throw Error(ErrorCode::kNumericalFailure,
                    "Lemke's method ended with an inaccurate solution");
      }
      return z;
    }
    entering = tab.complement(left);
  }
  throw Error(ErrorCode::kNumericalFailure, "Lemke's method exceeded its pivot budget");
}

LpModel solution_set_rows(const Matrix& m, const Vector& q, const Vector& zbar,
                          double tol) {
  require_square(m);
  const std::size_t n = m.rows();
  if (q.size() != n || zbar.size() != n) {
    throw Error(ErrorCode::kDimensionMismatch, "q and zbar must have length n");
  }
  if (lcp_violation(m, q, zbar) > tol * lcp_scale(m, q, zbar)) {
    throw Error(ErrorCode::kInvalidArgument, "zbar does not solve the nominal LCP");
  }
  LpModel lp(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto row = m.row(i);
    lp.add_row(Vector(row.begin(), row.end()), Relation::kGreaterEqual, -q[i]);
  }
  lp.add_row(q, Relation::kEqual, dot(q, zbar));
  for (std::size_t i = 0; i < n; ++i) {
    Vector coeffs(n);
    for (std::size_t j = 0; j < n; ++j) coeffs[j] = m(i, j) + m(j, i);
    const double rhs = dot(coeffs, zbar);
    lp.add_row(std::move(coeffs), Relation::kEqual, rhs);
  }
  return lp;
}

std::vector<std::size_t> compute_support_P(const Matrix& m, const Vector& q,
                                           const Vector& zbar, const Tolerances& tol) {
  LpModel lp = solution_set_rows(m, q, zbar, tol.feas);
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    std::fill(lp.objective.begin(), lp.objective.end(), 0.0);
    lp.objective[i] = 1.0;
    const LpResult res = lp_solve(lp, tol.lp);
    if (res.status == LpStatus::kInfeasible) {
      throw Error(ErrorCode::kNumericalFailure, "solution set LP infeasible at a known solution");
    }
    if (res.status == LpStatus::kUnbounded || res.value > tol.zero) out.push_back(i);
  }
  return out;
}

PsdReport psd_solve(const Instance& inst, const LinHullBasis& basis, const Tolerances& tol) {
  inst.check_dimensions();
  if (inst.mixed) {
    throw Error(ErrorCode::kInvalidArgument, "the PSD path handles pure LCPs only");
  }
  const std::size_t n = inst.n();
  PsdReport rep;
  rep.is_psd = check_psd(inst.matrix, tol.feas);
  if (!rep.is_psd) {
    rep.status = PsdStatus::kNotPsd;
    rep.message = "symmetric part of M is not positive semidefinite";
    return rep;
  }
  rep.nominal = lemke_nominal(inst.matrix, inst.offset, tol.feas);
  if (!rep.nominal) {
    rep.status = PsdStatus::kInfeasible;
    rep.message = "nominal LCP has no solution";
    return rep;
  }
  rep.support_P = compute_support_P(inst.matrix, inst.offset, *rep.nominal, tol);
  rep.lp_calls = n;

  std::vector<std::uint8_t> x(n, 0);
  for (std::size_t i : rep.support_P) x[i] = 1;
  const NodeLpBuilder builder(inst, basis);
  ++rep.lp_calls;
  const LpResult lp = lp_feasible(builder.build(NodeState::leaf(x)), tol.lp);
  if (lp.status != LpStatus::kOptimal) {
    rep.status = PsdStatus::kInfeasible;
    rep.message = "no affine robust solution with support inside P";
    return rep;
  }
  rep.policy = builder.extract_policy(lp.point, x, tol.zero);
  rep.verification = verify_policy(inst, basis, *rep.policy, tol);
  if (rep.verification->verified()) {
    rep.status = PsdStatus::kFeasible;
  } else {
    rep.status = PsdStatus::kNumericalFailure;
    rep.message = "LP solution failed verification: " + rep.verification->violations.front();
  }
  return rep;
}

SolveReport to_solve_report(const PsdReport& psd, const Tolerances& tol) {
  SolveReport rep;
  switch (psd.status) {
    case PsdStatus::kFeasible:
      rep.status = SolveStatus::kFeasible;
      break;
    case PsdStatus::kInfeasible:
      rep.status = SolveStatus::kInfeasible;
      break;
    case PsdStatus::kNumericalFailure:
      rep.status = SolveStatus::kNumericalFailure;
      break;
    case PsdStatus::kNotPsd:
      throw Error(ErrorCode::kInvalidArgument, psd.message);
  }
  rep.policy = psd.policy;
  rep.verification = psd.verification;
  rep.nodes_explored = psd.policy || psd.lp_calls > 0 ? 1 : 0;
  rep.lp_calls = psd.lp_calls;
  rep.tolerances = tol;
  rep.message = psd.message;
  return rep;
}

}  // namespace aarlcp
