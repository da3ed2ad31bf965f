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

#include "aarlcp/error.hpp"
#include "aarlcp/linhull.hpp"
#include "aarlcp/milp.hpp"
#include "aarlcp/mixed.hpp"
#include "doctest.h"
#include "test_util.hpp"

namespace aarlcp {
namespace {

// One-dimensional base example with y tied down by y - 3 = 0.
Instance decoupled(double coupling, bool adjustable) {
  Instance inst = testing::one_dim_example();
  MixedExtension mx;
  mx.eq_z = {{0}};
  mx.eq_y = {{1}};
  mx.y_coupling = {{coupling}};
  mx.eq_offset = {-3};
  mx.eq_perturbation = {{0}};
  mx.y_adjustable = adjustable;
  inst.mixed = mx;
  return inst;
}

SolveReport solve(const Instance& inst) {
  return mixed_solve(inst, compute_lin_hull(inst, 1e-7));
}

TEST_CASE("decoupled free variable") {
  const Instance inst = decoupled(0, false);
  const SolveReport rep = solve(inst);
  REQUIRE(rep.status == SolveStatus::kFeasible);
  const Policy& p = *rep.policy;
  REQUIRE(p.y);
  CHECK(p.y->intercept[0] == doctest::Approx(3.0));
  CHECK(p.intercept[0] == doctest::Approx(2.0));
  CHECK(p.slope(0, 0) == doctest::Approx(-0.5));
  CHECK(p.y->slope(0, 0) == 0.0);
  const VerifyReport v = verify_mixed(inst, compute_lin_hull(inst, 1e-7), p);
  CHECK(v.verified());
  CHECK(v.nominal_residual <= 1e-8);
  CHECK(v.span_residual <= 1e-8);
  CHECK(v.equality_residual <= 1e-8);
}

TEST_CASE("coupled free variable") {
  const Instance inst = decoupled(1, false);
  const SolveReport rep = solve(inst);
  REQUIRE(rep.status == SolveStatus::kFeasible);
  CHECK(rep.policy->y->intercept[0] == doctest::Approx(3.0));
  CHECK(rep.policy->intercept[0] == doctest::Approx(0.5));
  CHECK(rep.policy->slope(0, 0) == doctest::Approx(-0.5));
}

TEST_CASE("unsatisfiable equality") {
  Instance inst = decoupled(0, false);
  inst.mixed->eq_y = {{0}};
  inst.mixed->eq_offset = {1};
  CHECK(solve(inst).status == SolveStatus::kInfeasible);
}

TEST_CASE("adjustable free variable") {
  SUBCASE("no uncertainty in the equality gives E = 0") {
    const SolveReport rep = solve(decoupled(0, true));
    REQUIRE(rep.status == SolveStatus::kFeasible);
    CHECK(rep.policy->y->slope(0, 0) == doctest::Approx(0.0));
  }
  SUBCASE("W = I forces E v = -P v") {
    Instance inst = decoupled(0, true);
    inst.mixed->eq_perturbation = {{2}};
    const SolveReport rep = solve(inst);
    REQUIRE(rep.status == SolveStatus::kFeasible);
    CHECK(rep.policy->y->slope(0, 0) == doctest::Approx(-2.0));
    // The same data without adjustability has no solution: y would have to
    // cancel 2u with a constant.
    inst.mixed->y_adjustable = false;
    CHECK(solve(inst).status == SolveStatus::kInfeasible);
  }
}

TEST_CASE("mixed verification") {
  const Instance inst = decoupled(0, false);
  const LinHullBasis basis = compute_lin_hull(inst, 1e-7);
  Policy p;
  p.slope = {{-0.5}};
  p.intercept = {2};
  p.support = {1};
  p.y = AffineRule{Matrix{{0}}, {3}};
  CHECK(verify_mixed(inst, basis, p).verified());
  p.y->intercept[0] = 4;
  const VerifyReport bad = verify_mixed(inst, basis, p);
  CHECK_FALSE(bad.verified());
  CHECK(bad.equality_residual == doctest::Approx(1.0));
  p.y->intercept[0] = 3;
  p.y->slope(0, 0) = 1;
  CHECK_FALSE(verify_mixed(inst, basis, p).verified());

  Policy no_y = p;
  no_y.y.reset();
  CHECK_THROWS_AS(verify_mixed(inst, basis, no_y), Error);
  CHECK_THROWS_AS(mixed_solve(testing::one_dim_example(),
                              compute_lin_hull(testing::one_dim_example(), 1e-7)),
                  Error);
}

TEST_CASE("deterministic mixed instance") {
  // U = {0} and M = N = V = W = [1]: z = 1, y = -1 gives w = z + y = 0 and
  // V z + W y = 0.
  Instance inst;
  inst.matrix = {{1}};
  inst.offset = {0};
  inst.perturbation = {{1}};
  inst.uncertainty = {{{1}, {-1}}, {0, 0}};
  inst.mixed = MixedExtension{{{1}}, {{1}}, {{1}}, {0}, {{0}}, false};
  const LinHullBasis basis = compute_lin_hull(inst, 1e-7);
  CHECK(basis.dim() == 0);
  Policy p;
  p.slope = {{0}};
  p.intercept = {1};
  p.support = {1};
  p.y = AffineRule{Matrix{{0}}, {-1}};
  CHECK(verify_mixed(inst, basis, p).verified());
}

TEST_CASE("identity embedding matches the pure solver") {
  testing::Rng rng(55);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = testing::uniform_int(rng, 1, 3);
    const std::size_t k = testing::uniform_int(rng, 1, 2);
    const Instance pure = trial % 2
                              ? testing::planted_instance(rng, n, k, testing::random_box(rng, k))
                              : testing::random_instance(rng, n, k, testing::random_box(rng, k));
    Instance mixed = pure;
    const std::size_t m = testing::uniform_int(rng, 1, 2);
    mixed.mixed = MixedExtension{Matrix(m, n), Matrix::identity(m), Matrix(n, m), Vector(m, 0.0),
                                 Matrix(m, k), trial % 3 == 0};
    const LinHullBasis basis = compute_lin_hull(pure, 1e-7);
    CHECK(mixed_solve(mixed, basis).status == bnb_solve(pure, basis).status);
  }
}

TEST_CASE("node LP builder entry point") {
  const Instance inst = decoupled(1, false);
  const LinHullBasis basis = compute_lin_hull(inst, 1e-7);
  const std::vector<std::uint8_t> on{1};
  CHECK(lp_feasible(build_mixed_node_lp(inst, basis, NodeState::leaf(on))).status ==
        LpStatus::kOptimal);
  CHECK_THROWS_AS(build_mixed_node_lp(testing::one_dim_example(), basis, NodeState::leaf(on)),
                  Error);
}

}  // namespace
}  // namespace aarlcp
