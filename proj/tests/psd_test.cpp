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

#include <set>

#include "aarlcp/error.hpp"
#include "aarlcp/linhull.hpp"
#include "aarlcp/milp.hpp"
#include "aarlcp/psd.hpp"
#include "aarlcp/verify.hpp"
#include "doctest.h"
#include "test_util.hpp"

namespace aarlcp {
namespace {

// Smallest eigenvalue of a symmetric matrix by cyclic Jacobi rotations.
double min_eigenvalue(Matrix a) {
  const std::size_t n = a.rows();
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
    if (off < 1e-24) break;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        if (std::abs(a(p, q)) < 1e-300) continue;
        const double theta = (a(q, q) - a(p, p)) / (2 * a(p, q));
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0), s = t * c;
        for (std::size_t r = 0; r < n; ++r) {
          const double arp = a(r, p), arq = a(r, q);
          a(r, p) = c * arp - s * arq;
          a(r, q) = s * arp + c * arq;
        }
        for (std::size_t r = 0; r < n; ++r) {
          const double apr = a(p, r), aqr = a(q, r);
          a(p, r) = c * apr - s * aqr;
          a(q, r) = s * apr + c * aqr;
        }
      }
    }
  }
  double lo = a(0, 0);
  for (std::size_t i = 1; i < n; ++i) lo = std::min(lo, a(i, i));
  return lo;
}

Matrix gram(testing::Rng& rng, std::size_t rows, std::size_t n) {
  const Matrix g = testing::grid_matrix(rng, rows, n, 2);
  return mat_mul(g.transposed(), g);
}

Instance box_instance(Matrix m, Vector q, double half_width) {
  Instance inst;
  inst.matrix = std::move(m);
  inst.offset = std::move(q);
  const std::size_t n = inst.offset.size();
  inst.perturbation = Matrix::identity(n);
  inst.uncertainty = {Matrix(2 * n, n), Vector(2 * n, -half_width)};
  for (std::size_t j = 0; j < n; ++j) {
    inst.uncertainty.lhs(2 * j, j) = 1;
    inst.uncertainty.lhs(2 * j + 1, j) = -1;
  }
  return inst;
}

// Union over all complementary pieces of {i : z_i can be positive}.
std::set<std::size_t> support_by_pieces(const Matrix& m, const Vector& q) {
  const std::size_t n = m.rows();
  std::set<std::size_t> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    for (std::size_t i = 0; i < n; ++i) {
      if (!((mask >> i) & 1U)) continue;
      LpModel lp(n);
      lp.objective[i] = 1.0;
      for (std::size_t r = 0; r < n; ++r) {
        const auto row = m.row(r);
        const Relation rel = (mask >> r) & 1U ? Relation::kEqual : Relation::kGreaterEqual;
        lp.add_row(Vector(row.begin(), row.end()), rel, -q[r]);
        if (!((mask >> r) & 1U)) lp.fix(r, 0.0);
      }
      const LpResult res = lp_solve(lp);
      if (res.status == LpStatus::kUnbounded ||
          (res.status == LpStatus::kOptimal && res.value > 1e-9)) {
        out.insert(i);
      }
    }
  }
  return out;
}

TEST_CASE("PSD check") {
  CHECK(check_psd(Matrix{{2, 0}, {0, 0}}, 1e-9));
  CHECK_FALSE(check_psd(Matrix{{1, -1}, {1, -1}}, 1e-9));
  CHECK_FALSE(check_psd(Matrix{{-1, 0}, {0, -1}}, 1e-9));
  CHECK(check_psd(Matrix{{0, 1}, {-1, 0}}, 1e-9));
  CHECK_FALSE(check_psd(Matrix{{0, 1}, {1, 0}}, 1e-9));
  CHECK_FALSE(check_psd(Matrix{{0, 0}, {1, 0}}, 1e-9));

  testing::Rng rng(6);
  int decided = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = testing::uniform_int(rng, 1, 4);
    Matrix m = trial % 2 ? gram(rng, testing::uniform_int(rng, 1, int(n)), n)
                         : testing::grid_matrix(rng, n, n, 2);
    Matrix sym(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) sym(i, j) = 0.5 * (m(i, j) + m(j, i));
    const double lo = min_eigenvalue(sym);
    if (std::abs(lo) < 1e-6) {
      CHECK(check_psd(m, 1e-9));
      continue;
    }
    ++decided;
    CHECK(check_psd(m, 1e-9) == (lo > 0));
  }
  CHECK(decided > 50);
}

TEST_CASE("Lemke's method") {
  SUBCASE("desk example") {
    const auto z = lemke_nominal(Matrix{{2, 0}, {0, 0}}, {-2, 1}, 1e-9);
    REQUIRE(z);
    CHECK((*z)[0] == doctest::Approx(1.0));
    CHECK((*z)[1] == doctest::Approx(0.0));
  }
  SUBCASE("nonnegative q") {
    const auto z = lemke_nominal(Matrix::identity(2), {1, 1}, 1e-9);
    REQUIRE(z);
    CHECK(*z == Vector{0, 0});
  }
  SUBCASE("precondition") {
    CHECK_THROWS_AS(lemke_nominal(Matrix{{0, 0}, {1, 0}}, {1, 1}, 1e-9), Error);
  }
  SUBCASE("random PSD matrices") {
    testing::Rng rng(13);
    int solved = 0, empty = 0;
    for (int trial = 0; trial < 150; ++trial) {
      const std::size_t n = testing::uniform_int(rng, 1, 5);
      Matrix m = gram(rng, testing::uniform_int(rng, 1, int(n)), n);
      if (trial % 3 == 0) {  // add a skew part, still PSD
        const Matrix s = testing::grid_matrix(rng, n, n, 1);
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = 0; j < n; ++j) m(i, j) += s(i, j) - s(j, i);
      }
      Vector q(n);
      for (double& v : q) v = testing::grid_value(rng, 3);
      const auto z = lemke_nominal(m, q, 1e-9);
      // For PSD M the LCP is solvable iff {z >= 0 : M z + q >= 0} is nonempty.
      LpModel feas(n);
      for (std::size_t i = 0; i < n; ++i) {
        const auto row = m.row(i);
        feas.add_row(Vector(row.begin(), row.end()), Relation::kGreaterEqual, -q[i]);
      }
      const bool feasible = lp_feasible(feas).status == LpStatus::kOptimal;
      CHECK(z.has_value() == feasible);
      if (!z) {
        ++empty;
        continue;
      }
      ++solved;
      const Vector w = mat_vec(m, *z);
      double comp = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        CHECK((*z)[i] >= 0.0);
        CHECK(w[i] + q[i] >= -1e-8);
        comp += (*z)[i] * (w[i] + q[i]);
      }
      CHECK(std::abs(comp) <= 1e-8 * std::max(1.0, norm_inf(*z)));
    }
    CHECK(solved > 0);
    CHECK(empty > 0);
  }
}

TEST_CASE("solution set description") {
  const Matrix m{{2, 0}, {0, 0}};
  const LpModel lp = solution_set_rows(m, {-2, 1}, {1, 0}, 1e-9);
  bool has_q_row = false, has_sym_row = false;
  for (const LpRow& row : lp.rows) {
    if (row.relation != Relation::kEqual) continue;
    has_q_row |= row.coeffs == Vector{-2, 1} && row.rhs == -2;
    has_sym_row |= row.coeffs == Vector{4, 0} && row.rhs == 4;
  }
  CHECK(has_q_row);
  CHECK(has_sym_row);
  CHECK(lp.rows.size() == 2 + 1 + 2);

  const LpModel trivial = solution_set_rows(Matrix::identity(2), {1, 1}, {0, 0}, 1e-9);
  CHECK(trivial.rows.size() == 5);
  CHECK(trivial.max_violation({0, 0}) == 0.0);

  CHECK_THROWS_AS(solution_set_rows(m, {-2, 1}, {2, 0}, 1e-9), Error);
}

TEST_CASE("support set P") {
  CHECK(compute_support_P(Matrix{{2, 0}, {0, 0}}, {-2, 1}, {1, 0}, {}) ==
        std::vector<std::size_t>{0});
  CHECK(compute_support_P(Matrix::identity(2), {1, 1}, {0, 0}, {}).empty());
  CHECK(compute_support_P(Matrix{{0}}, {0}, {0}, {}) == std::vector<std::size_t>{0});

  testing::Rng rng(42);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = testing::uniform_int(rng, 1, 4);
    const Matrix m = gram(rng, testing::uniform_int(rng, 1, int(n)), n);
    Vector q(n);
    for (double& v : q) v = testing::grid_value(rng, 3);
    const auto z = lemke_nominal(m, q, 1e-9);
    if (!z) continue;
    const auto p = compute_support_P(m, q, *z, {});
    const std::set<std::size_t> got(p.begin(), p.end());
    CHECK(got == support_by_pieces(m, q));
  }
}

TEST_CASE("PSD path examples") {
  SUBCASE("desk example") {
    const Instance inst = box_instance(Matrix{{2, 0}, {0, 0}}, {-2, 1}, 0.5);
    const PsdReport rep = psd_solve(inst, compute_lin_hull(inst, 1e-7));
    REQUIRE(rep.status == PsdStatus::kFeasible);
    CHECK(rep.support_P == std::vector<std::size_t>{0});
    CHECK(rep.policy->support == std::vector<std::uint8_t>{1, 0});
    CHECK(rep.policy->intercept[0] == doctest::Approx(1.0));
    CHECK(rep.policy->intercept[1] == 0.0);
    CHECK(rep.policy->slope(0, 0) == doctest::Approx(-0.5));
    CHECK(rep.policy->slope(0, 1) == doctest::Approx(0.0));
    CHECK(rep.policy->slope(1, 0) == doctest::Approx(0.0));
    CHECK(rep.policy->slope(1, 1) == doctest::Approx(0.0));
    CHECK(rep.verification->verified());
  }
  SUBCASE("identity with a positive offset") {
    const Instance inst = box_instance(Matrix::identity(2), {1, 1}, 0.5);
    const PsdReport rep = psd_solve(inst, compute_lin_hull(inst, 1e-7));
    REQUIRE(rep.status == PsdStatus::kFeasible);
    CHECK(rep.policy->intercept == Vector{0, 0});
    CHECK(norm_inf(rep.policy->slope.entries()) == 0.0);
  }
  SUBCASE("identity with a negative offset agrees with branch-and-bound") {
    const Instance inst = box_instance(Matrix::identity(2), {-1, -1}, 2.0);
    const LinHullBasis basis = compute_lin_hull(inst, 1e-7);
    const PsdReport rep = psd_solve(inst, basis);
    const SolveReport bnb = bnb_solve(inst, basis);
    CHECK((rep.status == PsdStatus::kFeasible) == (bnb.status == SolveStatus::kFeasible));
  }
  SUBCASE("not PSD") {
    const Instance inst = testing::singular_example();
    CHECK(psd_solve(inst, compute_lin_hull(inst, 1e-7)).status == PsdStatus::kNotPsd);
  }
  SUBCASE("no nominal solution") {
    const Instance inst = box_instance(Matrix{{1, 0}, {0, 0}}, {0, -1}, 0.5);
    const PsdReport rep = psd_solve(inst, compute_lin_hull(inst, 1e-7));
    CHECK(rep.status == PsdStatus::kInfeasible);
    CHECK_FALSE(rep.nominal);
  }
}

}  // namespace
}  // namespace aarlcp
