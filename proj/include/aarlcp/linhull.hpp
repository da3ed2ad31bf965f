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

#ifndef AARLCP_LINHULL_HPP_
#define AARLCP_LINHULL_HPP_

#include <cstddef>
#include <vector>

#include "aarlcp/core.hpp"

namespace aarlcp {

/// Basis of the linear hull of U = {u : Theta u >= zeta}, plus the split of
/// Theta into rows tight on all of U (Phi) and the remaining inequalities.
struct LinHullBasis {
  std::vector<Vector> vectors;
  Matrix phi;
  std::vector<std::size_t> equality_rows;    // 0-based rows of Theta in Phi
  std::vector<std::size_t> inequality_rows;

  std::size_t dim() const noexcept { return vectors.size(); }
};

/// Maximizes every row direction of Theta over U; rows whose maximum equals
/// their bound are implicit equalities, and lin(U) = ker(Phi).
///
/// Throws kEmptyUncertaintySet, kNotCompact (a row direction is unbounded)
/// or kRelintViolation (an implicit equality with nonzero bound).
LinHullBasis compute_lin_hull(const Instance& inst, double tol);

/// Same, for a bare polyhedron.
LinHullBasis compute_lin_hull(const Polyhedron& set, double tol);

}  // namespace aarlcp

#endif  // AARLCP_LINHULL_HPP_
