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

#include "aarlcp/linhull.hpp"

#include <cmath>
#include <string>

#include "aarlcp/error.hpp"
#include "aarlcp/lp.hpp"

namespace aarlcp {

LinHullBasis compute_lin_hull(const Instance& inst, double tol) {
  inst.check_dimensions();
  return compute_lin_hull(inst.uncertainty, tol);
}

LinHullBasis compute_lin_hull(const Polyhedron& set, double tol) {
  const std::size_t k = set.dim();
  const std::size_t g = set.num_rows();
  if (set.rhs.size() != g) {
    throw Error(ErrorCode::kDimensionMismatch, "zeta must have one entry per Theta row");
  }

  LpModel base(k);
  for (std::size_t j = 0; j < k; ++j) base.set_free(j);
  for (std::size_t r = 0; r < g; ++r) {
    const auto row = set.lhs.row(r);
    base.add_row(Vector(row.begin(), row.end()), Relation::kGreaterEqual, set.rhs[r]);
  }

  LinHullBasis out;
  std::vector<double> phi_entries;
  for (std::size_t r = 0; r < g; ++r) {
    LpModel lp = base;
    const auto row = set.lhs.row(r);
    std::copy(row.begin(), row.end(), lp.objective.begin());
    const LpResult res = lp_solve(lp, tol);
    switch (res.status) {
      case LpStatus::kInfeasible:
        throw Error(ErrorCode::kEmptyUncertaintySet, "uncertainty set is empty");
      case LpStatus::kUnbounded:
        throw Error(ErrorCode::kNotCompact,
                    "uncertainty set is unbounded along row " + std::to_string(r + 1));
      case LpStatus::kOptimal:
        break;
    }
    const double bound = set.rhs[r];
    if (std::abs(res.value - bound) <= tol * std::max(1.0, std::abs(bound))) {
      if (std::abs(bound) > tol) {
        throw Error(ErrorCode::kRelintViolation,
                    "row " + std::to_string(r + 1) +
                        " holds with equality on U but has nonzero bound");
      }
      out.equality_rows.push_back(r);
      phi_entries.insert(phi_entries.end(), row.begin(), row.end());
    } else {
      out.inequality_rows.push_back(r);
    }
  }

  out.phi = Matrix(out.equality_rows.size(), k, std::move(phi_entries));
  out.vectors = rref_kernel_basis(out.phi, tol);
  return out;
}

}  // namespace aarlcp
