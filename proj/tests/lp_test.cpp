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

#include <algorithm>
#include <numeric>

#include "aarlcp/lp.hpp"
#include "doctest.h"
#include "test_util.hpp"

namespace aarlcp {
namespace {

// max c'u over {u : lhs u >= rhs}, u free.
LpModel over_set(const Polyhedron& set, const Vector& c) {
  LpModel lp(set.dim());
  for (std::size_t j = 0; j < set.dim(); ++j) lp.set_free(j);
  lp.objective = c;
  for (std::size_t i = 0; i < set.num_rows(); ++i) {
    const auto row = set.lhs.row(i);
    lp.add_row(Vector(row.begin(), row.end()), Relation::kGreaterEqual, set.rhs[i]);
  }
  return lp;
}

TEST_CASE("maximize over the coupled interval") {
  const Polyhedron set{{{1, -1}, {-1, 1}, {1, 0}, {-1, 0}}, {0, 0, -2, -2}};
  const LpResult res = lp_solve(over_set(set, {1, 0}));
  REQUIRE(res.status == LpStatus::kOptimal);
  CHECK(res.value == doctest::Approx(2.0));
  CHECK(res.point[0] == doctest::Approx(2.0));
  CHECK(res.point[1] == doctest::Approx(2.0));
}

TEST_CASE("contradictory bounds are infeasible") {
  LpModel lp(1);
  lp.add_row({1}, Relation::kGreaterEqual, 1);
  lp.add_row({1}, Relation::kLessEqual, 0);
  CHECK(lp_solve(lp).status == LpStatus::kInfeasible);

  LpModel neg(1);
  neg.add_row({1}, Relation::kLessEqual, -1);
  CHECK(lp_feasible(neg).status == LpStatus::kInfeasible);
}

TEST_CASE("solution set of the diagonal PSD example") {
  // z >= 0, -2 z1 + z2 = -2, 4 z1 = 4, 0 = 0, 2 z1 - 2 >= 0, 1 >= 0
  LpModel lp(2);
  lp.objective = {1, 0};
  lp.add_row({-2, 1}, Relation::kEqual, -2);
  lp.add_row({4, 0}, Relation::kEqual, 4);
  lp.add_row({0, 0}, Relation::kEqual, 0);
  lp.add_row({2, 0}, Relation::kGreaterEqual, 2);
  lp.add_row({0, 0}, Relation::kGreaterEqual, -1);
  const LpResult res = lp_solve(lp);
  REQUIRE(res.status == LpStatus::kOptimal);
  CHECK(res.value == doctest::Approx(1.0));
  CHECK(res.point[1] == doctest::Approx(0.0));
}

TEST_CASE("feasibility wrapper") {
  LpModel single(1);
  single.add_row({2}, Relation::kEqual, 4);
  const LpResult res = lp_feasible(single);
  REQUIRE(res.status == LpStatus::kOptimal);
  CHECK(res.point[0] == doctest::Approx(2.0));

  LpModel free_vars(3);
  for (std::size_t j = 0; j < 3; ++j) free_vars.set_free(j);
  free_vars.objective = {1, 1, 1};
  const LpResult origin = lp_feasible(free_vars);
  REQUIRE(origin.status == LpStatus::kOptimal);
  CHECK(origin.value == 0.0);
}

TEST_CASE("unbounded and bounded variables") {
  LpModel ray(1);
  ray.objective = {1};
  CHECK(lp_solve(ray).status == LpStatus::kUnbounded);

  LpModel boxed(2);
  boxed.set_bounds(0, -3, 2);
  boxed.set_bounds(1, -1, kInfinity);
  boxed.objective = {1, -1};
  LpResult res = lp_solve(boxed);
  REQUIRE(res.status == LpStatus::kOptimal);
  CHECK(res.value == doctest::Approx(3.0));
  boxed.objective = {-1, 0};
  res = lp_solve(boxed);
  REQUIRE(res.status == LpStatus::kOptimal);
  CHECK(res.point[0] == doctest::Approx(-3.0));

  LpModel pinned(2);
  pinned.fix(0, -2.5);
  pinned.add_row({1, 1}, Relation::kEqual, 0);
  res = lp_feasible(pinned);
  REQUIRE(res.status == LpStatus::kOptimal);
  CHECK(res.point == Vector{-2.5, 2.5});
}

TEST_CASE("redundant equalities and degenerate vertices") {
  LpModel lp(3);
  lp.objective = {1, 2, 3};
  lp.add_row({1, 1, 1}, Relation::kEqual, 1);
  lp.add_row({2, 2, 2}, Relation::kEqual, 2);
  lp.add_row({1, 1, 1}, Relation::kLessEqual, 1);
  for (int i = 0; i < 6; ++i) lp.add_row({1, 0, 1}, Relation::kLessEqual, 1);
  const LpResult res = lp_solve(lp);
  REQUIRE(res.status == LpStatus::kOptimal);
  CHECK(res.value == doctest::Approx(3.0));
  CHECK(lp.max_violation(res.point) <= 1e-9);
}

TEST_CASE("Klee-Minty cube") {
  const std::size_t n = 6;
  LpModel lp(n);
  for (std::size_t j = 0; j < n; ++j) lp.objective[j] = std::pow(2.0, double(n - 1 - j));
  for (std::size_t i = 0; i < n; ++i) {
    Vector row(n, 0.0);
    for (std::size_t j = 0; j < i; ++j) row[j] = std::pow(2.0, double(i - j + 1));
    row[i] = 1.0;
    lp.add_row(row, Relation::kLessEqual, std::pow(5.0, double(i + 1)));
  }
  const LpResult res = lp_solve(lp);
  REQUIRE(res.status == LpStatus::kOptimal);
  CHECK(res.value == doctest::Approx(std::pow(5.0, double(n))));
}

TEST_CASE("random polytopes agree with vertex enumeration") {
  testing::Rng rng(2024);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t k = testing::uniform_int(rng, 1, 3);
    const std::size_t g = testing::uniform_int(rng, int(k) + 1, 7);
    Polyhedron set = testing::random_polytope(rng, k, g, trial % 3 == 0 ? 1 : 0);
    // Random cuts may empty the set.
    if (trial % 4 == 0) {
      const Vector d = testing::random_direction(rng, k);
      Matrix lhs(set.num_rows() + 1, k);
      for (std::size_t i = 0; i < set.num_rows(); ++i)
        for (std::size_t j = 0; j < k; ++j) lhs(i, j) = set.lhs(i, j);
      for (std::size_t j = 0; j < k; ++j) lhs(set.num_rows(), j) = d[j];
      set.lhs = lhs;
      set.rhs.push_back(testing::uniform(rng, -1.0, 1.5));
    }
    const Vector c = testing::random_direction(rng, k);
    Vector neg(k);
    for (std::size_t j = 0; j < k; ++j) neg[j] = -c[j];
    const auto brute = testing::vertex_min(set, neg, 0.0);
    const LpResult res = lp_solve(over_set(set, c));
    if (!brute) {
      CHECK(res.status == LpStatus::kInfeasible);
      continue;
    }
    REQUIRE(res.status == LpStatus::kOptimal);
    CHECK(res.value == doctest::Approx(-*brute).epsilon(1e-7));
    CHECK(over_set(set, c).max_violation(res.point) <= 1e-7);
  }
}

TEST_CASE("optimum is invariant under row and column permutations") {
  testing::Rng rng(99);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = testing::uniform_int(rng, 2, 6);
    const std::size_t m = testing::uniform_int(rng, 1, 6);
    LpModel lp(n);
    for (double& c : lp.objective) c = testing::uniform(rng, -1, 1);
    for (std::size_t i = 0; i < m; ++i) {
      Vector row(n);
      for (double& a : row) a = testing::grid_value(rng, 2);
      lp.add_row(row, Relation::kLessEqual, testing::uniform(rng, 0, 5));
    }
    Vector ones(n, 1.0);
    lp.add_row(ones, Relation::kLessEqual, 10.0);
    if (trial % 2) lp.add_row(ones, Relation::kEqual, 3.0);
    const LpResult base = lp_solve(lp);

    std::vector<std::size_t> rows(lp.rows.size()), cols(n);
    std::iota(rows.begin(), rows.end(), 0);
    std::iota(cols.begin(), cols.end(), 0);
    std::shuffle(rows.begin(), rows.end(), rng);
    std::shuffle(cols.begin(), cols.end(), rng);
    LpModel perm(n);
    for (std::size_t j = 0; j < n; ++j) perm.objective[j] = lp.objective[cols[j]];
    for (std::size_t i : rows) {
      Vector row(n);
      for (std::size_t j = 0; j < n; ++j) row[j] = lp.rows[i].coeffs[cols[j]];
      perm.add_row(row, lp.rows[i].relation, lp.rows[i].rhs);
    }
    const LpResult other = lp_solve(perm);
    REQUIRE(other.status == base.status);
    if (base.status == LpStatus::kOptimal) {
      CHECK(other.value == doctest::Approx(base.value).epsilon(1e-6));
      CHECK(lp.max_violation(base.point) <= 1e-7);
      CHECK(perm.max_violation(other.point) <= 1e-7);
    }
  }
}

}  // namespace
}  // namespace aarlcp
