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

// Data model for uncertain linear complementarity problems
//
//   0 <= z(u)  _|_  M z(u) + q + T u >= 0   for all u in U = {u : Theta u >= zeta}
//
// together with affine policies z(u) = D u + r and the dense linear algebra
// the solvers need.

#ifndef AARLCP_CORE_HPP_
#define AARLCP_CORE_HPP_

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace aarlcp {

using Vector = std::vector<double>;

/// Numerical tolerances shared by every solver path.
struct Tolerances {
  /// Intercept entries at or below this count as zero when forming the support.
  double zero = 1e-9;
  /// Residual bound for constraint and complementarity checks.
  double feas = 1e-7;
  /// Phase-I infeasibility threshold handed to the LP solver.
  double lp = 1e-9;
};

/// Dense row-major matrix of finite doubles.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> entries);
  Matrix(std::initializer_list<std::initializer_list<double>> rows);

  static Matrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return data_.empty(); }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<double> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const double> row(std::size_t i) const {
    return {data_.data() + i * cols_, cols_};
  }

  const std::vector<double>& entries() const noexcept { return data_; }

  Matrix transposed() const;
  bool all_finite() const;

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

Matrix mat_mul(const Matrix& a, const Matrix& b);
Vector mat_vec(const Matrix& a, std::span<const double> x);
double dot(std::span<const double> a, std::span<const double> b);
double norm_inf(std::span<const double> v);
/// Induced infinity norm (largest absolute row sum).
double norm_inf(const Matrix& a);

/// Basis of {v : A v = 0} from a reduced row echelon form with partial
/// pivoting. Vectors are ordered by free column and scaled to unit max-norm.
std::vector<Vector> rref_kernel_basis(const Matrix& a, double tol);
std::size_t matrix_rank(const Matrix& a, double tol);
/// Determinant by partial-pivot elimination (square matrices only).
double determinant(const Matrix& a);

/// Polyhedron {u : lhs u >= rhs}.
struct Polyhedron {
  Matrix lhs;
  Vector rhs;

  std::size_t dim() const noexcept { return lhs.cols(); }
  std::size_t num_rows() const noexcept { return lhs.rows(); }
};

/// Equality system and coupling of a mixed LCP:
///   V z + W y + p + P u = 0,   w = M z + N y + q + T u.
struct MixedExtension {
  Matrix eq_z;             // V, m x n
  Matrix eq_y;             // W, m x m
  Matrix y_coupling;       // N, n x m
  Vector eq_offset;        // p
  Matrix eq_perturbation;  // P, m x k
  bool y_adjustable = false;

  std::size_t m() const noexcept { return eq_y.rows(); }
};

struct Instance {
  Matrix matrix;         // M, n x n
  Vector offset;         // q
  Matrix perturbation;   // T, n x k
  Polyhedron uncertainty;
  std::size_t here_and_now = 0;  // leading rows of the slope pinned to zero
  std::optional<MixedExtension> mixed;

  std::size_t n() const noexcept { return matrix.rows(); }
  std::size_t k() const noexcept { return perturbation.cols(); }
  std::size_t g() const noexcept { return uncertainty.num_rows(); }

  /// Throws Error(kDimensionMismatch) on inconsistent shapes or non-finite data.
  void check_dimensions() const;
};

/// Affine part of an adjustable free variable, y(u) = E u + s.
struct AffineRule {
  Matrix slope;     // E
  Vector intercept; // s
};

/// Affine decision rule z(u) = D u + r with its support indicator.
struct Policy {
  Matrix slope;                  // D, n x k
  Vector intercept;              // r, nonnegative
  std::vector<std::uint8_t> support;  // x in {0,1}^n
  std::optional<AffineRule> y;   // mixed problems only

  /// z(u) at a given realization.
  Vector evaluate(std::span<const double> u) const;
};

/// Checks r >= 0, pinned here-and-now rows, and x_i = 0 => r_i <= zero_tol.
/// Returns a description of the first broken invariant, if any.
std::optional<std::string> policy_invariant_violation(const Policy& policy,
                                                      std::size_t here_and_now,
                                                      double zero_tol);

struct ValidationReport {
  bool compact = false;
  bool zero_in_relint = false;
  bool perturbation_full_rank = false;
  std::vector<std::size_t> implicit_equality_rows;  // 0-based
  std::vector<std::string> warnings;

  /// Rank deficiency of T is only a warning.
  bool ok() const noexcept { return compact && zero_in_relint; }
  bool operator==(const ValidationReport&) const = default;
};

/// Checks the standing assumptions on the uncertainty set.
/// Throws kDimensionMismatch or kEmptyUncertaintySet.
ValidationReport validate(const Instance& inst, double tol);

}  // namespace aarlcp

#endif  // AARLCP_CORE_HPP_
