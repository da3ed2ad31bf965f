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

// Binary-free path for positive semidefinite M.
//
// For PSD M all nominal solutions share their complementarity structure, so
// the support of any robust intercept lies in
//   P = {i : some z in SOL(q, M) has z_i > 0},
// and M_P r + q_P = 0 holds for every nominal r. Fixing x = 1_P turns the
// branch-and-bound into a single LP. P itself comes from n LPs over
//   SOL(q, M) = {z >= 0 : q + M z >= 0, q'(z - zbar) = 0, (M + M')(z - zbar) = 0}
// for any one solution zbar, which Lemke's method supplies.

#ifndef AARLCP_PSD_HPP_
#define AARLCP_PSD_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "aarlcp/core.hpp"
#include "aarlcp/linhull.hpp"
#include "aarlcp/lp.hpp"
#include "aarlcp/report.hpp"

namespace aarlcp {

/// True iff the symmetric part (M + M')/2 is positive semidefinite, decided
/// by diagonally pivoted elimination with threshold tol * scale.
bool check_psd(const Matrix& m, double tol);

/// A point of SOL(q, M) by Lemke's method (covering vector of ones), or
/// nothing on ray termination, which for PSD M means SOL(q, M) is empty.
/// Throws kInvalidArgument if M is not PSD, kNumericalFailure if the
/// iteration cap is hit.
std::optional<Vector> lemke_nominal(const Matrix& m, const Vector& q, double tol);

/// The polyhedral description of SOL(q, M) above as an LP over z.
/// Throws kInvalidArgument if zbar is not a solution within tol.
LpModel solution_set_rows(const Matrix& m, const Vector& q, const Vector& zbar,
                          double tol);

/// 0-based indices i with sup z_i > tol.zero over SOL(q, M); an unbounded
/// maximization counts as positive.
std::vector<std::size_t> compute_support_P(const Matrix& m, const Vector& q,
                                           const Vector& zbar, const Tolerances& tol);

enum class PsdStatus { kFeasible, kInfeasible, kNotPsd, kNumericalFailure };

const char* to_string(PsdStatus status);

struct PsdReport {
  PsdStatus status = PsdStatus::kNotPsd;
  bool is_psd = false;
  std::optional<Vector> nominal;
  std::vector<std::size_t> support_P;
  std::optional<Policy> policy;
  std::optional<VerifyReport> verification;
  std::size_t lp_calls = 0;
  std::string message;
};

/// Mixed instances are rejected with kInvalidArgument.
PsdReport psd_solve(const Instance& inst, const LinHullBasis& basis,
                    const Tolerances& tol = {});

/// Same report in the shape branch-and-bound uses.
SolveReport to_solve_report(const PsdReport& psd, const Tolerances& tol);

}  // namespace aarlcp

#endif  // AARLCP_PSD_HPP_
