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

// Mixed LCPs with free variables y and equalities V z + W y + p + P u = 0.
//
// The node LPs extend the pure ones by N s in every nominal row, N E in
// every span row (adjustable y only) and the always-valid rows
//   V r + W s + p = 0,   (V D + W E + P) v^j = 0.
// s and E are free; E is absent when y is not adjustable.

#ifndef AARLCP_MIXED_HPP_
#define AARLCP_MIXED_HPP_

#include "aarlcp/core.hpp"
#include "aarlcp/linhull.hpp"
#include "aarlcp/lp.hpp"
#include "aarlcp/milp.hpp"
#include "aarlcp/report.hpp"

namespace aarlcp {

/// Throws kInvalidArgument when the instance has no mixed extension.
LpModel build_mixed_node_lp(const Instance& inst, const LinHullBasis& basis,
                            const NodeState& node);

/// Branch-and-bound over x with the mixed node LPs. Feasible reports carry a
/// policy with its y rule set.
SolveReport mixed_solve(const Instance& inst, const LinHullBasis& basis,
                        const BnbOptions& opts = {});

VerifyReport verify_mixed(const Instance& inst, const LinHullBasis& basis,
                          const Policy& policy, const Tolerances& tol = {});

}  // namespace aarlcp

#endif  // AARLCP_MIXED_HPP_
