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

#include <cmath>
#include <limits>

#include "aarlcp/core.hpp"
#include "aarlcp/error.hpp"
#include "doctest.h"
#include "test_util.hpp"

namespace aarlcp {
namespace {

Instance interval_instance(Polyhedron set) {
  Instance inst;
  inst.matrix = {{1}};
  inst.offset = {1};
  inst.perturbation = {{1}};
  inst.uncertainty = std::move(set);
  return inst;
}

Matrix naive_product(const Matrix& a, const Matrix& b) {
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j)
      for (std::size_t l = 0; l < a.cols(); ++l) c(i, j) += a(i, l) * b(l, j);
  return c;
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an aarlcp::Error");
  return ErrorCode::kInvalidArgument;
}

TEST_CASE("matrix construction checks its entry count") {
  CHECK(code_of([] { Matrix(2, 2, std::vector<double>{1, 2, 3}); }) ==
        ErrorCode::kDimensionMismatch);
  const Matrix m(2, 3, std::vector<double>{1, 2, 3, 4, 5, 6});
  CHECK(m(1, 0) == 4);
  CHECK(m.transposed()(0, 1) == 4);
}

TEST_CASE("mat_mul") {
  const Matrix b = {{1, 2}, {3, 4}};
  CHECK(mat_mul(Matrix::identity(2), b) == b);
  CHECK(mat_mul(Matrix{{1, -1}, {1, -1}}, Matrix{{-1, 0}, {0, 0}}) == Matrix{{-1, 0}, {-1, 0}});
  CHECK(code_of([] { mat_mul(Matrix(2, 3), Matrix(2, 3)); }) == ErrorCode::kDimensionMismatch);

  testing::Rng rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    Matrix x(3, 3), y(3, 3);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) {
        x(i, j) = testing::uniform(rng, -5, 5);
        y(i, j) = testing::uniform(rng, -5, 5);
      }
    const Matrix got = mat_mul(x, y);
    const Matrix want = naive_product(x, y);
    for (std::size_t i = 0; i < 9; ++i) {
      CHECK(got.entries()[i] == doctest::Approx(want.entries()[i]).epsilon(1e-12));
    }
  }
}

TEST_CASE("rref kernel basis") {
  SUBCASE("coupled coordinates") {
    const auto basis = rref_kernel_basis(Matrix{{1, -1}, {-1, 1}}, 1e-9);
    REQUIRE(basis.size() == 1);
    CHECK(basis[0][0] == doctest::Approx(basis[0][1]));
    CHECK(norm_inf(basis[0]) == doctest::Approx(1.0));
  }
  SUBCASE("full rank") { CHECK(rref_kernel_basis(Matrix::identity(2), 1e-9).empty()); }
  SUBCASE("zero map") { CHECK(rref_kernel_basis(Matrix(1, 3), 1e-9).size() == 3); }
  SUBCASE("no rows") { CHECK(rref_kernel_basis(Matrix(0, 2), 1e-9).size() == 2); }
  SUBCASE("random rank-deficient matrices") {
    testing::Rng rng(11);
    for (int trial = 0; trial < 50; ++trial) {
      const std::size_t rows = testing::uniform_int(rng, 1, 5);
      const std::size_t cols = testing::uniform_int(rng, 1, 5);
      const std::size_t inner = testing::uniform_int(rng, 1, 4);
      const Matrix a =
          mat_mul(testing::grid_matrix(rng, rows, inner, 2), testing::grid_matrix(rng, inner, cols, 2));
      const double tol = 1e-9;
      const auto basis = rref_kernel_basis(a, tol);
      CHECK(basis.size() + matrix_rank(a, tol) == cols);
      for (const Vector& v : basis) {
        CHECK(norm_inf(mat_vec(a, v)) <= 10 * tol * std::max(1.0, norm_inf(a)));
      }
      if (!basis.empty()) {
        Matrix stacked(basis.size(), cols);
        for (std::size_t j = 0; j < basis.size(); ++j)
          for (std::size_t c = 0; c < cols; ++c) stacked(j, c) = basis[j][c];
        CHECK(matrix_rank(stacked, tol) == basis.size());
      }
    }
  }
}

TEST_CASE("determinant") {
  CHECK(determinant(Matrix{{1, -1}, {1, -1}}) == doctest::Approx(0.0));
  CHECK(determinant(Matrix{{2, 1}, {1, 1}}) == doctest::Approx(1.0));
  CHECK(determinant(Matrix{{0, 1}, {1, 0}}) == doctest::Approx(-1.0));
}

TEST_CASE("instance dimension checks") {
  Instance inst = testing::singular_example();
  CHECK_NOTHROW(inst.check_dimensions());
  Instance bad = inst;
  bad.offset.push_back(1.0);
  CHECK(code_of([&] { bad.check_dimensions(); }) == ErrorCode::kDimensionMismatch);
  bad = inst;
  bad.matrix(0, 1) = std::numeric_limits<double>::quiet_NaN();
  CHECK(code_of([&] { bad.check_dimensions(); }) == ErrorCode::kDimensionMismatch);
  bad = inst;
  bad.here_and_now = 2;
  CHECK(code_of([&] { bad.check_dimensions(); }) == ErrorCode::kDimensionMismatch);
  bad = inst;
  bad.uncertainty.rhs.pop_back();
  CHECK(code_of([&] { bad.check_dimensions(); }) == ErrorCode::kDimensionMismatch);
}

TEST_CASE("validate") {
  SUBCASE("coupled interval") {
    const ValidationReport rep = validate(testing::singular_example(), 1e-7);
    CHECK(rep.compact);
    CHECK(rep.zero_in_relint);
    CHECK(rep.perturbation_full_rank);
    CHECK(rep.implicit_equality_rows == std::vector<std::size_t>{0, 1});
    CHECK(rep.ok());
    CHECK(rep == validate(testing::singular_example(), 1e-7));
  }
  SUBCASE("ray") {
    const ValidationReport rep = validate(interval_instance({{{1}}, {0}}), 1e-7);
    CHECK_FALSE(rep.compact);
    CHECK_FALSE(rep.ok());
  }
  SUBCASE("origin outside") {
    const ValidationReport rep = validate(interval_instance({{{1}, {-1}}, {1, -2}}), 1e-7);
    CHECK(rep.compact);
    CHECK_FALSE(rep.zero_in_relint);
  }
  SUBCASE("origin on the boundary") {
    const ValidationReport rep = validate(interval_instance({{{1}, {-1}}, {0, -1}}), 1e-7);
    CHECK_FALSE(rep.zero_in_relint);
  }
  SUBCASE("empty") {
    CHECK(code_of([] { validate(interval_instance({{{1}, {-1}}, {1, 0}}), 1e-7); }) ==
          ErrorCode::kEmptyUncertaintySet);
  }
  SUBCASE("rank-deficient perturbation only warns") {
    Instance inst = testing::singular_example();
    inst.perturbation = {{1, 1}, {1, 1}};
    const ValidationReport rep = validate(inst, 1e-7);
    CHECK(rep.ok());
    CHECK_FALSE(rep.perturbation_full_rank);
    REQUIRE(rep.warnings.size() == 1);
    CHECK(rep.warnings[0].find("T rank-deficient") != std::string::npos);
  }
}

TEST_CASE("policy invariants") {
  Policy p{Matrix{{0, 0}, {1, 0}}, {0, 1}, {0, 1}, std::nullopt};
  CHECK_FALSE(policy_invariant_violation(p, 1, 1e-9));
  p.slope(0, 0) = 1;
  CHECK(policy_invariant_violation(p, 1, 1e-9));
  p.slope(0, 0) = 0;
  p.intercept[0] = 0.5;
  CHECK(policy_invariant_violation(p, 1, 1e-9));
  p.intercept[0] = -0.5;
  p.support[0] = 1;
  CHECK(policy_invariant_violation(p, 0, 1e-9));
  const Vector z = Policy{Matrix{{-1, 0}, {0, 0}}, {2, 1}, {1, 1}, std::nullopt}.evaluate(
      std::vector<double>{1, 1});
  CHECK(z == Vector{1, 1});
}

}  // namespace
}  // namespace aarlcp
