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

#include "aarlcp/lp.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <string>

#include "aarlcp/error.hpp"

namespace aarlcp {

void LpModel::add_row(Vector coeffs, Relation relation, double rhs) {
  if (coeffs.size() != num_vars) {
    throw Error(ErrorCode::kDimensionMismatch,
                "LP row has " + std::to_string(coeffs.size()) +
                    " coefficients, model has " + std::to_string(num_vars) +
                    " variables");
  }
  rows.push_back({std::move(coeffs), relation, rhs});
}

void LpModel::set_bounds(std::size_t var, double lo, double hi) {
  lower.at(var) = lo;
  upper.at(var) = hi;
}

double LpModel::max_violation(const Vector& x) const {
  double worst = 0.0;
  for (std::size_t j = 0; j < num_vars; ++j) {
    worst = std::max({worst, lower[j] - x[j], x[j] - upper[j]});
  }
  for (const LpRow& row : rows) {
    const double lhs = dot(row.coeffs, x);
    switch (row.relation) {
      case Relation::kLessEqual:
        worst = std::max(worst, lhs - row.rhs);
        break;
      case Relation::kGreaterEqual:
        worst = std::max(worst, row.rhs - lhs);
        break;
      case Relation::kEqual:
        worst = std::max(worst, std::abs(lhs - row.rhs));
        break;
    }
  }
  return worst;
}

const char* to_string(LpStatus status) {
  switch (status) {
    case LpStatus::kOptimal:
      return "optimal";
    case LpStatus::kInfeasible:
      return "infeasible";
    case LpStatus::kUnbounded:
      return "unbounded";
  }
  return "?";
}

namespace {

constexpr double kPivotTol = 1e-9;
constexpr double kCostTol = 1e-9;
constexpr double kDegenerateStep = 1e-12;

// Original variable x_j expressed through tableau columns:
//   x_j = offset + sign * t[col]            (one column)
//   x_j = t[col] - t[neg_col]               (free split)
struct VariableMap {
  double offset = 0.0;
  double sign = 1.0;
  int col = -1;
  int neg_col = -1;
};

enum class PhaseResult { kOptimal, kUnbounded };

class Simplex {
 public:
  explicit Simplex(const LpModel& model, double tol)
      : model_(model), tol_(tol) {}

  LpResult run(bool use_objective) {
    LpResult result;
    if (!build()) {
      result.status = LpStatus::kInfeasible;
      return result;
    }
    pivot_limit_ = 50 * (rows_ + cols_) + 50;

    if (num_artificial_ > 0) {
      set_phase_one_costs();
      iterate();
      // objective_ = -(sum of artificials) on normalized rows
      if (-objective_ > tol_ * std::max(1.0, rhs_scale_)) {
        result.status = LpStatus::kInfeasible;
        result.pivots = pivots_;
        return result;
      }
      drive_out_artificials();
    }

    if (use_objective && set_phase_two_costs()) {
      if (iterate() == PhaseResult::kUnbounded) {
        result.status = LpStatus::kUnbounded;
        result.pivots = pivots_;
        return result;
      }
    }

    result.status = LpStatus::kOptimal;
    result.point = extract_point();
    result.value = use_objective ? dot(model_.objective, result.point) : 0.0;
    result.pivots = pivots_;
    return result;
  }

 private:
  double& at(std::size_t i, std::size_t j) { return tab_[i * stride_ + j]; }
  double& rhs(std::size_t i) { return tab_[i * stride_ + cols_]; }

  // Converts the model to  A t (<=,=,>=) b, t >= 0, b >= 0 with unit-scaled
  // rows and lays out the initial tableau. Returns false if some bound pair
  // or empty row is contradictory.
  bool build() {
    const std::size_t n = model_.num_vars;
    maps_.assign(n, {});
    std::size_t num_struct = 0;
    struct BoundRow {
      std::size_t col;
      double width;
    };
    std::vector<BoundRow> bound_rows;

    for (std::size_t j = 0; j < n; ++j) {
      const double lo = model_.lower.empty() ? 0.0 : model_.lower[j];
      const double hi = model_.upper.empty() ? kInfinity : model_.upper[j];
      VariableMap& vm = maps_[j];
      if (lo > hi) {
        if (lo - hi > tol_ * std::max(1.0, std::abs(lo))) return false;
        vm.offset = lo;
      } else if (lo == hi) {
        vm.offset = lo;
      } else if (std::isfinite(lo)) {
        vm.offset = lo;
        vm.col = static_cast<int>(num_struct++);
        if (std::isfinite(hi)) bound_rows.push_back({std::size_t(vm.col), hi - lo});
      } else if (std::isfinite(hi)) {
        vm.offset = hi;
        vm.sign = -1.0;
        vm.col = static_cast<int>(num_struct++);
      } else {
        vm.col = static_cast<int>(num_struct++);
        vm.neg_col = static_cast<int>(num_struct++);
      }
    }

    struct NormRow {
      Vector coeffs;  // over structural columns
      Relation rel;
      double rhs;
    };
    std::vector<NormRow> rows;
    rows.reserve(model_.rows.size() + bound_rows.size());

    // Rows whose coefficients are all rounding noise are treated as empty;
    // unit scaling would otherwise blow the noise up into a real constraint.
    double model_scale = 1.0;
    for (const LpRow& row : model_.rows) {
      for (double a : row.coeffs) model_scale = std::max(model_scale, std::abs(a));
    }
    const double noise = 1e-13 * model_scale;

    auto push = [&](Vector coeffs, Relation rel, double b) -> bool {
      double scale = 0.0;
      for (double c : coeffs) scale = std::max(scale, std::abs(c));
      if (scale <= noise) {
        const double slack = tol_ * std::max(1.0, std::abs(b));
        switch (rel) {
          case Relation::kLessEqual:
            return b >= -slack;
          case Relation::kGreaterEqual:
            return b <= slack;
          case Relation::kEqual:
            return std::abs(b) <= slack;
        }
      }
      for (double& c : coeffs) c /= scale;
      b /= scale;
      if (b < 0.0) {
        for (double& c : coeffs) c = -c;
        b = -b;
        if (rel == Relation::kLessEqual) {
          rel = Relation::kGreaterEqual;
        } else if (rel == Relation::kGreaterEqual) {
          rel = Relation::kLessEqual;
        }
      }
      rows.push_back({std::move(coeffs), rel, b});
      return true;
    };

    for (const LpRow& row : model_.rows) {
      Vector coeffs(num_struct, 0.0);
      double b = row.rhs;
      for (std::size_t j = 0; j < n; ++j) {
        const double a = row.coeffs[j];
        if (a == 0.0) continue;
        const VariableMap& vm = maps_[j];
        b -= a * vm.offset;
        if (vm.col >= 0) coeffs[vm.col] += a * vm.sign;
        if (vm.neg_col >= 0) coeffs[vm.neg_col] -= a;
      }
      if (!push(std::move(coeffs), row.relation, b)) return false;
    }
    for (const BoundRow& br : bound_rows) {
      Vector coeffs(num_struct, 0.0);
      coeffs[br.col] = 1.0;
      if (!push(std::move(coeffs), Relation::kLessEqual, br.width)) return false;
    }

    rows_ = rows.size();
    std::size_t num_slack = 0;
    num_artificial_ = 0;
    for (const NormRow& r : rows) {
      if (r.rel != Relation::kEqual) ++num_slack;
      if (r.rel != Relation::kLessEqual) ++num_artificial_;
    }
    num_struct_ = num_struct;
    first_artificial_ = num_struct + num_slack;
    cols_ = first_artificial_ + num_artificial_;
    stride_ = cols_ + 1;
    tab_.assign(rows_ * stride_, 0.0);
    basis_.assign(rows_, 0);
    is_artificial_row_.assign(rows_, false);

    std::size_t slack = num_struct;
    std::size_t art = first_artificial_;
    rhs_scale_ = 0.0;
    for (std::size_t i = 0; i < rows_; ++i) {
      const NormRow& r = rows[i];
      std::copy(r.coeffs.begin(), r.coeffs.end(), tab_.begin() + i * stride_);
      rhs(i) = r.rhs;
      rhs_scale_ = std::max(rhs_scale_, r.rhs);
      switch (r.rel) {
        case Relation::kLessEqual:
          at(i, slack) = 1.0;
          basis_[i] = slack++;
          break;
        case Relation::kGreaterEqual:
          at(i, slack++) = -1.0;
          at(i, art) = 1.0;
          basis_[i] = art++;
          is_artificial_row_[i] = true;
          break;
        case Relation::kEqual:
          at(i, art) = 1.0;
          basis_[i] = art++;
          is_artificial_row_[i] = true;
          break;
      }
    }
    can_enter_.assign(cols_, 1);
    cost_.assign(cols_, 0.0);
    return true;
  }

  void set_phase_one_costs() {
    std::fill(cost_.begin(), cost_.end(), 0.0);
    objective_ = 0.0;
    for (std::size_t i = 0; i < rows_; ++i) {
      if (!is_artificial_row_[i]) continue;
      for (std::size_t j = 0; j < first_artificial_; ++j) cost_[j] += at(i, j);
      objective_ -= rhs(i);
    }
  }

  // Returns false when the objective is identically zero (nothing to do).
  bool set_phase_two_costs() {
    Vector c(cols_, 0.0);
    bool any = false;
    for (std::size_t j = 0; j < model_.num_vars; ++j) {
      const double cj = model_.objective.empty() ? 0.0 : model_.objective[j];
      if (cj == 0.0) continue;
      const VariableMap& vm = maps_[j];
      if (vm.col >= 0) c[vm.col] += cj * vm.sign;
      if (vm.neg_col >= 0) c[vm.neg_col] -= cj;
      any = true;
    }
    if (!any) return false;
    cost_ = c;
    objective_ = 0.0;
    for (std::size_t i = 0; i < rows_; ++i) {
      const double cb = c[basis_[i]];
      if (cb == 0.0) continue;
      for (std::size_t j = 0; j < cols_; ++j) cost_[j] -= cb * at(i, j);
      objective_ += cb * rhs(i);
    }
    for (std::size_t i = 0; i < rows_; ++i) cost_[basis_[i]] = 0.0;
    return true;
  }

  void pivot(std::size_t r, std::size_t c) {
    if (++pivots_ > pivot_limit_) {
      throw Error(ErrorCode::kNumericalFailure,
                  "simplex pivot limit exhausted (" +
                      std::to_string(pivot_limit_) + " pivots)");
    }
    double* prow = &tab_[r * stride_];
    const double inv = 1.0 / prow[c];
    for (std::size_t j = 0; j < stride_; ++j) prow[j] *= inv;
    prow[c] = 1.0;
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i == r) continue;
      double* row = &tab_[i * stride_];
      const double f = row[c];
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < stride_; ++j) {
        if (prow[j] != 0.0) row[j] -= f * prow[j];
      }
      row[c] = 0.0;
      if (row[cols_] < 0.0 && row[cols_] > -1e-11) row[cols_] = 0.0;
    }
    const double f = cost_[c];
    if (f != 0.0) {
      for (std::size_t j = 0; j < cols_; ++j) {
        if (prow[j] != 0.0) cost_[j] -= f * prow[j];
      }
      objective_ += f * prow[cols_];
      cost_[c] = 0.0;
    }
    // an artificial that has left the basis never comes back
    if (basis_[r] >= first_artificial_) can_enter_[basis_[r]] = 0;
    basis_[r] = c;
  }

  PhaseResult iterate() {
    bool bland = false;
    std::size_t degenerate_run = 0;
    const std::size_t bland_after = 10 * std::max<std::size_t>(rows_, 1);
    for (;;) {
      // pricing
      std::size_t enter = cols_;
      double best = kCostTol;
      for (std::size_t j = 0; j < cols_; ++j) {
        if (!can_enter_[j] || cost_[j] <= kCostTol) continue;
        if (bland) {
          enter = j;
          break;
        }
        if (cost_[j] > best) {
          best = cost_[j];
          enter = j;
        }
      }
      if (enter == cols_) return PhaseResult::kOptimal;

      // ratio test
      std::size_t leave = rows_;
      double best_ratio = 0.0;
      double best_pivot = 0.0;
      for (std::size_t i = 0; i < rows_; ++i) {
        const double a = at(i, enter);
        if (a <= kPivotTol) continue;
        const double ratio = std::max(rhs(i), 0.0) / a;
        if (leave == rows_) {
          leave = i;
          best_ratio = ratio;
          best_pivot = a;
          continue;
        }
        const double gap = ratio - best_ratio;
        const double tie = 1e-12 * (1.0 + best_ratio);
        if (gap < -tie) {
          leave = i;
          best_ratio = ratio;
          best_pivot = a;
        } else if (gap <= tie) {
          const bool better = bland ? basis_[i] < basis_[leave] : a > best_pivot;
          if (better) {
            leave = i;
            best_ratio = ratio;
            best_pivot = a;
          }
        }
      }
      if (leave == rows_) return PhaseResult::kUnbounded;

      if (best_ratio <= kDegenerateStep) {
        if (++degenerate_run > bland_after) bland = true;
      } else {
        degenerate_run = 0;
      }
      pivot(leave, enter);
    }
  }

  // After a successful phase I, every artificial still basic sits at zero.
  // Pivot it out on any usable column, or drop the row as redundant.
  void drive_out_artificials() {
    std::vector<bool> drop(rows_, false);
    bool any_drop = false;
    for (std::size_t i = 0; i < rows_; ++i) {
      if (basis_[i] < first_artificial_) continue;
      std::size_t best_col = cols_;
      double best = kPivotTol * 10;
      for (std::size_t j = 0; j < first_artificial_; ++j) {
        const double a = std::abs(at(i, j));
        if (a > best) {
          best = a;
          best_col = j;
        }
      }
      if (best_col == cols_) {
        drop[i] = true;
        any_drop = true;
      } else {
        pivot(i, best_col);
        // pivoting on a negative entry may leave tiny negative rhs elsewhere
        for (std::size_t r = 0; r < rows_; ++r) {
          if (rhs(r) < 0.0) rhs(r) = 0.0;
        }
      }
    }
    for (std::size_t j = first_artificial_; j < cols_; ++j) can_enter_[j] = 0;
    if (!any_drop) return;

    std::vector<double> kept;
    std::vector<std::size_t> kept_basis;
    kept.reserve(tab_.size());
    for (std::size_t i = 0; i < rows_; ++i) {
      if (drop[i]) continue;
      kept.insert(kept.end(), tab_.begin() + i * stride_,
                  tab_.begin() + (i + 1) * stride_);
      kept_basis.push_back(basis_[i]);
    }
    tab_ = std::move(kept);
    basis_ = std::move(kept_basis);
    rows_ = basis_.size();
  }

  Vector extract_point() {
    Vector t(cols_, 0.0);
    for (std::size_t i = 0; i < rows_; ++i) t[basis_[i]] = std::max(rhs(i), 0.0);
    Vector x(model_.num_vars, 0.0);
    for (std::size_t j = 0; j < model_.num_vars; ++j) {
      const VariableMap& vm = maps_[j];
      double v = vm.offset;
      if (vm.col >= 0) v += vm.sign * t[vm.col];
      if (vm.neg_col >= 0) v -= t[vm.neg_col];
      x[j] = v;
    }
    return x;
  }

  const LpModel& model_;
  double tol_;
  std::vector<VariableMap> maps_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t stride_ = 0;
  std::size_t num_struct_ = 0;
  std::size_t first_artificial_ = 0;
  std::size_t num_artificial_ = 0;
  std::vector<double> tab_;
  std::vector<std::size_t> basis_;
  std::vector<bool> is_artificial_row_;
  std::vector<char> can_enter_;
  Vector cost_;
  double objective_ = 0.0;
  double rhs_scale_ = 0.0;
  std::size_t pivots_ = 0;
  std::size_t pivot_limit_ = 0;
};

void check_well_formed(const LpModel& model) {
  const std::size_t n = model.num_vars;
  if ((!model.objective.empty() && model.objective.size() != n) ||
      (!model.lower.empty() && model.lower.size() != n) ||
      (!model.upper.empty() && model.upper.size() != n)) {
    throw Error(ErrorCode::kDimensionMismatch, "LP vectors do not match num_vars");
  }
  for (const LpRow& row : model.rows) {
    if (row.coeffs.size() != n) {
      throw Error(ErrorCode::kDimensionMismatch, "LP row length does not match num_vars");
    }
  }
}

}  // namespace

LpResult lp_solve(const LpModel& model, double tol) {
  check_well_formed(model);
  return Simplex(model, tol).run(/*use_objective=*/true);
}

LpResult lp_feasible(const LpModel& model, double tol) {
  check_well_formed(model);
  return Simplex(model, tol).run(/*use_objective=*/false);
}

}  // namespace aarlcp
