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

// Affine expressions over a VariableLayout shared by the exported big-M
// model and the branch-and-bound node LPs, so both are built from one
// transcription.

#ifndef AARLCP_SRC_MODEL_ROWS_HPP_
#define AARLCP_SRC_MODEL_ROWS_HPP_

#include <cstddef>

#include "aarlcp/core.hpp"
#include "aarlcp/milp.hpp"

namespace aarlcp::detail {

/// coeffs . vars + constant
struct AffineRow {
  Vector coeffs;
  double constant = 0.0;
};

class ModelRows {
 public:
  ModelRows(const Instance& inst, const VariableLayout& layout)
      : inst_(inst), layout_(layout) {}

  /// M_i r + N_i s + q_i
  AffineRow nominal(std::size_t i) const {
    AffineRow row = blank();
    for (std::size_t l = 0; l < inst_.n(); ++l) {
      row.coeffs[layout_.intercept(l)] += inst_.matrix(i, l);
    }
    if (inst_.mixed) {
      for (std::size_t t = 0; t < inst_.mixed->m(); ++t) {
        row.coeffs[layout_.y_intercept(t)] += inst_.mixed->y_coupling(i, t);
      }
    }
    row.constant = inst_.offset[i];
    return row;
  }

  /// (M_i D + N_i E + T_i) v
  AffineRow span(std::size_t i, const Vector& v) const {
    AffineRow row = blank();
    for (std::size_t l = 0; l < inst_.n(); ++l) {
      const double mil = inst_.matrix(i, l);
      if (mil == 0.0) continue;
      for (std::size_t c = 0; c < inst_.k(); ++c) {
        row.coeffs[layout_.slope(l, c)] += mil * v[c];
      }
    }
    if (inst_.mixed && layout_.adjustable_y()) {
      for (std::size_t t = 0; t < inst_.mixed->m(); ++t) {
        const double nit = inst_.mixed->y_coupling(i, t);
        if (nit == 0.0) continue;
        for (std::size_t c = 0; c < inst_.k(); ++c) {
          row.coeffs[layout_.y_slope(t, c)] += nit * v[c];
        }
      }
    }
    row.constant = dot(inst_.perturbation.row(i), v);
    return row;
  }

  /// zeta' A_i + r_i
  AffineRow decision_dual_objective(std::size_t i) const {
    AffineRow row = blank();
    for (std::size_t j = 0; j < inst_.g(); ++j) {
      row.coeffs[layout_.decision_dual(j, i)] += inst_.uncertainty.rhs[j];
    }
    row.coeffs[layout_.intercept(i)] += 1.0;
    return row;
  }

  /// (Theta' A_i)_c - D_ic
  AffineRow decision_dual_equality(std::size_t i, std::size_t c) const {
    AffineRow row = blank();
    for (std::size_t j = 0; j < inst_.g(); ++j) {
      row.coeffs[layout_.decision_dual(j, i)] += inst_.uncertainty.lhs(j, c);
    }
    row.coeffs[layout_.slope(i, c)] -= 1.0;
    return row;
  }

  /// zeta' C_i + M_i r + N_i s + q_i
  AffineRow slack_dual_objective(std::size_t i) const {
    AffineRow row = nominal(i);
    for (std::size_t j = 0; j < inst_.g(); ++j) {
      row.coeffs[layout_.slack_dual(j, i)] += inst_.uncertainty.rhs[j];
    }
    return row;
  }

  /// (Theta' C_i)_c - (M_i D + N_i E + T_i) e_c
  AffineRow slack_dual_equality(std::size_t i, std::size_t c) const {
    Vector unit(inst_.k(), 0.0);
    unit[c] = 1.0;
    AffineRow row = span(i, unit);
    for (double& a : row.coeffs) a = -a;
    row.constant = -row.constant;
    for (std::size_t j = 0; j < inst_.g(); ++j) {
      row.coeffs[layout_.slack_dual(j, i)] += inst_.uncertainty.lhs(j, c);
    }
    return row;
  }

  /// V_t r + W_t s + p_t
  AffineRow mixed_equality(std::size_t t) const {
    const MixedExtension& mx = *inst_.mixed;
    AffineRow row = blank();
    for (std::size_t l = 0; l < inst_.n(); ++l) {
      row.coeffs[layout_.intercept(l)] += mx.eq_z(t, l);
    }
    for (std::size_t s = 0; s < mx.m(); ++s) {
      row.coeffs[layout_.y_intercept(s)] += mx.eq_y(t, s);
    }
    row.constant = mx.eq_offset[t];
    return row;
  }

  /// (V_t D + W_t E + P_t) v
  AffineRow mixed_span(std::size_t t, const Vector& v) const {
    const MixedExtension& mx = *inst_.mixed;
    AffineRow row = blank();
    for (std::size_t l = 0; l < inst_.n(); ++l) {
      const double vtl = mx.eq_z(t, l);
      if (vtl == 0.0) continue;
      for (std::size_t c = 0; c < inst_.k(); ++c) {
        row.coeffs[layout_.slope(l, c)] += vtl * v[c];
      }
    }
    if (layout_.adjustable_y()) {
      for (std::size_t s = 0; s < mx.m(); ++s) {
        const double wts = mx.eq_y(t, s);
        if (wts == 0.0) continue;
        for (std::size_t c = 0; c < inst_.k(); ++c) {
          row.coeffs[layout_.y_slope(s, c)] += wts * v[c];
        }
      }
    }
    row.constant = dot(mx.eq_perturbation.row(t), v);
    return row;
  }

 private:
  AffineRow blank() const { return {Vector(layout_.total(), 0.0), 0.0}; }

  const Instance& inst_;
  const VariableLayout& layout_;
};

}  // namespace aarlcp::detail

#endif  // AARLCP_SRC_MODEL_ROWS_HPP_
