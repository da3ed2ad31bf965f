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

#include "aarlcp/mixed.hpp"

#include "aarlcp/error.hpp"
#include "aarlcp/verify.hpp"

namespace aarlcp {

namespace {

void require_mixed(const Instance& inst) {
  if (!inst.mixed) {
    throw Error(ErrorCode::kInvalidArgument, "instance has no mixed extension");
  }
}

}  // namespace

LpModel build_mixed_node_lp(const Instance& inst, const LinHullBasis& basis,
                            const NodeState& node) {
  require_mixed(inst);
  return NodeLpBuilder(inst, basis).build(node);
}

SolveReport mixed_solve(const Instance& inst, const LinHullBasis& basis,
                        const BnbOptions& opts) {
  require_mixed(inst);
  return bnb_solve(inst, basis, opts);
}

VerifyReport verify_mixed(const Instance& inst, const LinHullBasis& basis,
                          const Policy& policy, const Tolerances& tol) {
  require_mixed(inst);
  if (!policy.y) {
    throw Error(ErrorCode::kInvalidArgument, "mixed verification needs a y rule");
  }
  return verify_policy(inst, basis, policy, tol);
}

}  // namespace aarlcp
