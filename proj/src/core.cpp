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

#include "aarlcp/core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <utility>

#include "aarlcp/error.hpp"
#include "aarlcp/lp.hpp"

namespace aarlcp {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDimensionMismatch:
      return "DimensionMismatch";
    case ErrorCode::kInvalidArgument:
      return "InvalidArgument";
    case ErrorCode::kParse:
      return "ParseError";
    case ErrorCode::kEmptyUncertaintySet:
      return "EmptyUncertaintySet";
    case ErrorCode::kNotCompact:
      return "NotCompact";
    case ErrorCode::kRelintViolation:
      return "RelintViolation";
    case ErrorCode::kNumericalFailure:
      return "NumericalFailure";
    case ErrorCode::kNodeLimitExceeded:
      return "NodeLimitExceeded";
    case ErrorCode::kOracleLimitExceeded:
      return "OracleLimitExceeded";
  }
  return "?";
}

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows * cols) {
    throw Error(ErrorCode::kDimensionMismatch,
                "matrix " + std::to_string(rows) + "x" + std::to_string(cols) +
                    " given " + std::to_string(data_.size()) + " entries");
  }
}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows)
    : rows_(rows.size()), cols_(rows.size() == 0 ? 0 : rows.begin()->size()) {
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) {
      throw Error(ErrorCode::kDimensionMismatch, "ragged matrix literal");
    }
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::transposed() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  }
  return t;
}

bool Matrix::all_finite() const {
  return std::all_of(data_.begin(), data_.end(),
                     [](double v) { return std::isfinite(v); });
}

Matrix mat_mul(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "mat_mul: " + std::to_string(a.rows()) + "x" +
                    std::to_string(a.cols()) + " times " +
                    std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
  }
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t l = 0; l < a.cols(); ++l) {
      const double ail = a(i, l);
      if (ail == 0.0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += ail * b(l, j);
    }
  }
  return c;
}

Vector mat_vec(const Matrix& a, std::span<const double> x) {
  if (a.cols() != x.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "mat_vec: size mismatch");
  }
  Vector y(a.rows(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i) y[i] = dot(a.row(i), x);
  return y;
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm_inf(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

double norm_inf(const Matrix& a) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    double s = 0.0;
    for (double x : a.row(i)) s += std::abs(x);
    m = std::max(m, s);
  }
  return m;
}

namespace {

struct Echelon {
  Matrix reduced;
  std::vector<std::size_t> pivot_cols;
};

// Gauss-Jordan with partial pivoting. A candidate pivot is accepted only if
// it exceeds tol times the largest entry of its (original) row.
Echelon reduce(const Matrix& a, double tol) {
  Echelon e{a, {}};
  Matrix& r = e.reduced;
  const std::size_t m = r.rows();
  const std::size_t n = r.cols();
  Vector row_scale(m, 0.0);
  for (std::size_t i = 0; i < m; ++i) row_scale[i] = norm_inf(r.row(i));

  std::size_t lead = 0;
  for (std::size_t c = 0; c < n && lead < m; ++c) {
    std::size_t best = m;
    double best_val = 0.0;
    for (std::size_t i = lead; i < m; ++i) {
      const double v = std::abs(r(i, c));
      if (v > tol * row_scale[i] && v > best_val) {
        best = i;
        best_val = v;
      }
    }
    if (best == m) {
      for (std::size_t i = lead; i < m; ++i) r(i, c) = 0.0;
      continue;
    }
    if (best != lead) {
      for (std::size_t j = 0; j < n; ++j) std::swap(r(best, j), r(lead, j));
      std::swap(row_scale[best], row_scale[lead]);
    }
    const double p = r(lead, c);
    for (std::size_t j = 0; j < n; ++j) r(lead, j) /= p;
    r(lead, c) = 1.0;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == lead) continue;
      const double f = r(i, c);
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < n; ++j) r(i, j) -= f * r(lead, j);
      r(i, c) = 0.0;
    }
    e.pivot_cols.push_back(c);
    ++lead;
  }
  return e;
}

}  // namespace

std::vector<Vector> rref_kernel_basis(const Matrix& a, double tol) {
  const std::size_t n = a.cols();
  const Echelon e = reduce(a, tol);
  std::vector<bool> is_pivot(n, false);
  for (std::size_t c : e.pivot_cols) is_pivot[c] = true;

  std::vector<Vector> basis;
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    Vector v(n, 0.0);
    v[f] = 1.0;
    for (std::size_t r = 0; r < e.pivot_cols.size(); ++r) {
      v[e.pivot_cols[r]] = -e.reduced(r, f);
    }
    const double scale = norm_inf(v);
    for (double& x : v) x /= scale;
    basis.push_back(std::move(v));
  }
  return basis;
}

std::size_t matrix_rank(const Matrix& a, double tol) {
  return reduce(a, tol).pivot_cols.size();
}

double determinant(const Matrix& a) {
  if (a.rows() != a.cols()) {
    throw Error(ErrorCode::kDimensionMismatch, "determinant of non-square matrix");
  }
  Matrix r = a;
  const std::size_t n = r.rows();
  double det = 1.0;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t best = c;
    for (std::size_t i = c + 1; i < n; ++i) {
      if (std::abs(r(i, c)) > std::abs(r(best, c))) best = i;
    }
    if (r(best, c) == 0.0) return 0.0;
    if (best != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(r(best, j), r(c, j));
      det = -det;
    }
    det *= r(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      const double f = r(i, c) / r(c, c);
      for (std::size_t j = c; j < n; ++j) r(i, j) -= f * r(c, j);
    }
  }
  return det;
}

void Instance::check_dimensions() const {
  auto fail = [](const std::string& what) {
    throw Error(ErrorCode::kDimensionMismatch, what);
  };
  const std::size_t nn = n();
  const std::size_t kk = k();
  if (nn == 0) fail("instance has n = 0");
  if (matrix.cols() != nn) fail("M must be square");
  if (offset.size() != nn) fail("q must have length n");
  if (perturbation.rows() != nn) fail("T must have n rows");
  if (kk == 0) fail("uncertainty dimension k must be positive");
  if (uncertainty.lhs.cols() != kk) fail("Theta must have k columns");
  if (uncertainty.rhs.size() != uncertainty.lhs.rows()) {
    fail("zeta must have one entry per Theta row");
  }
  if (here_and_now >= nn) fail("here-and-now count h must satisfy h < n");

  auto finite = [](std::span<const double> v) {
    return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
  };
  if (!matrix.all_finite() || !finite(offset) || !perturbation.all_finite() ||
      !uncertainty.lhs.all_finite() || !finite(uncertainty.rhs)) {
    fail("instance contains non-finite entries");
  }

  if (mixed) {
    const MixedExtension& mx = *mixed;
    const std::size_t m = mx.m();
    if (m == 0) fail("mixed extension has m = 0");
    if (mx.eq_y.cols() != m) fail("W must be m x m");
    if (mx.eq_z.rows() != m || mx.eq_z.cols() != nn) fail("V must be m x n");
    if (mx.y_coupling.rows() != nn || mx.y_coupling.cols() != m) fail("N must be n x m");
    if (mx.eq_offset.size() != m) fail("p must have length m");
    if (mx.eq_perturbation.rows() != m || mx.eq_perturbation.cols() != kk) {
      fail("P must be m x k");
    }
    if (!mx.eq_z.all_finite() || !mx.eq_y.all_finite() ||
        !mx.y_coupling.all_finite() || !finite(mx.eq_offset) ||
        !mx.eq_perturbation.all_finite()) {
      fail("mixed extension contains non-finite entries");
    }
  }
}

Vector Policy::evaluate(std::span<const double> u) const {
  Vector z = mat_vec(slope, u);
  for (std::size_t i = 0; i < z.size(); ++i) z[i] += intercept[i];
  return z;
}

std::optional<std::string> policy_invariant_violation(const Policy& policy,
                                                      std::size_t here_and_now,
                                                      double zero_tol) {
  const std::size_t n = policy.intercept.size();
  if (policy.slope.rows() != n || policy.support.size() != n) {
    return "policy blocks have inconsistent lengths";
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!(policy.intercept[i] >= 0.0)) {
      return "intercept entry " + std::to_string(i + 1) + " is negative";
    }
    if (policy.support[i] > 1) {
      return "support entry " + std::to_string(i + 1) + " is not binary";
    }
    if (policy.support[i] == 0 && policy.intercept[i] > zero_tol) {
      return "intercept entry " + std::to_string(i + 1) +
             " is positive outside the support";
    }
  }
  for (std::size_t i = 0; i < std::min(here_and_now, n); ++i) {
    for (double v : policy.slope.row(i)) {
      if (v != 0.0) {
        return "here-and-now row " + std::to_string(i + 1) + " of the slope is nonzero";
      }
    }
  }
  return std::nullopt;
}

ValidationReport validate(const Instance& inst, double tol) {
  inst.check_dimensions();
  const Polyhedron& set = inst.uncertainty;
  const std::size_t k = inst.k();
  const std::size_t g = inst.g();

  LpModel base(k);
  for (std::size_t j = 0; j < k; ++j) base.set_free(j);
  for (std::size_t r = 0; r < g; ++r) {
    const auto row = set.lhs.row(r);
    base.add_row(Vector(row.begin(), row.end()), Relation::kGreaterEqual, set.rhs[r]);
  }
  if (lp_feasible(base, tol).status == LpStatus::kInfeasible) {
    throw Error(ErrorCode::kEmptyUncertaintySet, "uncertainty set is empty");
  }

  ValidationReport report;
  report.compact = true;
  for (std::size_t j = 0; j < k && report.compact; ++j) {
    for (double sign : {1.0, -1.0}) {
      LpModel lp = base;
      lp.objective[j] = sign;
      if (lp_solve(lp, tol).status == LpStatus::kUnbounded) {
        report.compact = false;
        break;
      }
    }
  }

  for (std::size_t r = 0; r < g; ++r) {
    LpModel lp = base;
    const auto row = set.lhs.row(r);
    std::copy(row.begin(), row.end(), lp.objective.begin());
    const LpResult res = lp_solve(lp, tol);
    if (res.status == LpStatus::kOptimal &&
        std::abs(res.value - set.rhs[r]) <= tol * std::max(1.0, std::abs(set.rhs[r]))) {
      report.implicit_equality_rows.push_back(r);
    }
  }

  report.zero_in_relint = true;
  std::vector<bool> is_eq(g, false);
  for (std::size_t r : report.implicit_equality_rows) is_eq[r] = true;
  for (std::size_t r = 0; r < g; ++r) {
    const double z = set.rhs[r];
    if (is_eq[r] ? std::abs(z) > tol : z >= -tol) {
      report.zero_in_relint = false;
    }
  }

  report.perturbation_full_rank = matrix_rank(inst.perturbation, tol) == k;

  if (!report.compact) report.warnings.push_back("uncertainty set is not compact");
  if (!report.zero_in_relint) {
    report.warnings.push_back("0 is not in the relative interior of the uncertainty set");
  }
  if (!report.perturbation_full_rank) {
    report.warnings.push_back("T rank-deficient");
  }
  return report;
}

}  // namespace aarlcp
