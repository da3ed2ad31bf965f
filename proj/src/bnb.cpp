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
#include <atomic>
#include <cmath>
#include <deque>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>

#include "aarlcp/error.hpp"
#include "aarlcp/milp.hpp"
#include "aarlcp/verify.hpp"
#include "model_rows.hpp"

namespace aarlcp {

NodeState NodeState::leaf(std::span<const std::uint8_t> support) {
  NodeState s;
  s.fixed.reserve(support.size());
  for (std::uint8_t v : support) s.fixed.push_back(static_cast<std::int8_t>(v ? 1 : 0));
  s.depth = support.size();
  return s;
}

NodeState NodeState::with(std::size_t i, std::int8_t value) const {
  NodeState child = *this;
  if (child.fixed.at(i) < 0) ++child.depth;
  child.fixed[i] = value;
  return child;
}

NodeLpBuilder::NodeLpBuilder(const Instance& inst, const LinHullBasis& basis)
    : inst_(inst), basis_(basis) {
  inst_.check_dimensions();
  const std::size_t n = inst_.n();
  const std::size_t k = inst_.k();
  const std::size_t g = inst_.g();
  const std::size_t m = inst_.mixed ? inst_.mixed->m() : 0;
  const bool adjustable = inst_.mixed && inst_.mixed->y_adjustable;
  layout_ = VariableLayout(n, k, g, m, adjustable);
  const detail::ModelRows rows(inst_, layout_);

  LpModel lp(layout_.total());
  for (std::size_t i = 0; i < n; ++i) {
    lp.fix(layout_.support(i), 0.0);  // binaries live in the node state
    for (std::size_t c = 0; c < k; ++c) {
      if (i < inst_.here_and_now) {
        lp.fix(layout_.slope(i, c), 0.0);
      } else {
        lp.set_free(layout_.slope(i, c));
      }
    }
  }
  for (std::size_t t = 0; t < m; ++t) {
    lp.set_free(layout_.y_intercept(t));
    if (adjustable) {
      for (std::size_t c = 0; c < k; ++c) lp.set_free(layout_.y_slope(t, c));
    }
  }

  auto add = [](LpModel& target, detail::AffineRow row, Relation rel) {
    target.add_row(std::move(row.coeffs), rel, -row.constant);
  };

  equalities_base_ = lp;
  for (std::size_t t = 0; t < m; ++t) {
    add(lp, rows.mixed_equality(t), Relation::kEqual);
    add(equalities_base_, rows.mixed_equality(t), Relation::kEqual);
    for (const Vector& v : basis_.vectors) {
      add(lp, rows.mixed_span(t, v), Relation::kEqual);
      add(equalities_base_, rows.mixed_span(t, v), Relation::kEqual);
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    add(lp, rows.nominal(i), Relation::kGreaterEqual);
    add(lp, rows.decision_dual_objective(i), Relation::kGreaterEqual);
    for (std::size_t c = 0; c < k; ++c) {
      add(lp, rows.decision_dual_equality(i, c), Relation::kEqual);
    }
    add(lp, rows.slack_dual_objective(i), Relation::kGreaterEqual);
    for (std::size_t c = 0; c < k; ++c) {
      add(lp, rows.slack_dual_equality(i, c), Relation::kEqual);
    }
  }
  base_ = std::move(lp);
}

void NodeLpBuilder::add_indicator_rows(LpModel& lp, const NodeState& node) const {
  if (node.fixed.size() != inst_.n()) {
    throw Error(ErrorCode::kDimensionMismatch, "node state length must equal n");
  }
  const detail::ModelRows rows(inst_, layout_);
  for (std::size_t i = 0; i < inst_.n(); ++i) {
    if (node.fixed[i] == 0) {
      lp.fix(layout_.intercept(i), 0.0);
    } else if (node.fixed[i] == 1) {
      detail::AffineRow nom = rows.nominal(i);
      lp.add_row(std::move(nom.coeffs), Relation::kEqual, -nom.constant);
      for (const Vector& v : basis_.vectors) {
        detail::AffineRow sp = rows.span(i, v);
        lp.add_row(std::move(sp.coeffs), Relation::kEqual, -sp.constant);
      }
    }
  }
}

LpModel NodeLpBuilder::build(const NodeState& node) const {
  LpModel lp = base_;
  add_indicator_rows(lp, node);
  return lp;
}

LpModel NodeLpBuilder::build_equalities_only(const NodeState& node) const {
  LpModel lp = equalities_base_;
  add_indicator_rows(lp, node);
  return lp;
}

Policy NodeLpBuilder::extract_policy(const Vector& point,
                                     std::span<const std::uint8_t> support,
                                     double zero_tol) const {
  const std::size_t n = inst_.n();
  const std::size_t k = inst_.k();
  Policy pol;
  pol.slope = Matrix(n, k);
  pol.intercept.assign(n, 0.0);
  pol.support.assign(support.begin(), support.end());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t c = 0; c < k; ++c) pol.slope(i, c) = point[layout_.slope(i, c)];
    const double r = point[layout_.intercept(i)];
    pol.intercept[i] = r > zero_tol ? r : 0.0;
  }
  if (inst_.mixed) {
    const std::size_t m = inst_.mixed->m();
    AffineRule y{Matrix(m, k), Vector(m, 0.0)};
    for (std::size_t t = 0; t < m; ++t) {
      y.intercept[t] = point[layout_.y_intercept(t)];
      if (layout_.adjustable_y()) {
        for (std::size_t c = 0; c < k; ++c) y.slope(t, c) = point[layout_.y_slope(t, c)];
      }
    }
    pol.y = std::move(y);
  }
  return pol;
}

std::size_t default_node_limit(std::size_t n) {
  const std::size_t levels = std::min<std::size_t>(n, 20) + 1;
  return (std::size_t{1} << levels) - 1;
}

namespace {

struct SearchShared {
  std::atomic<std::size_t> nodes{0};
  std::atomic<std::size_t> lp_calls{0};
  std::atomic<bool> stop{false};
  std::mutex mutex;
  std::optional<SolveReport> found;
  std::exception_ptr failure;
};

class Search {
 public:
  Search(const Instance& inst, const LinHullBasis& basis, const BnbOptions& opts)
      : inst_(inst),
        basis_(basis),
        opts_(opts),
        builder_(inst, basis),
        limit_(opts.node_limit ? opts.node_limit : default_node_limit(inst.n())) {}

  // Evaluates one node. Returns its children in the order they should be
  // explored (first child first), or nothing if the node is pruned or was a
  // leaf. A feasible leaf is recorded in shared.found.
  std::vector<NodeState> expand(const NodeState& node, SearchShared& shared) const {
    const std::size_t count = shared.nodes.fetch_add(1) + 1;
    if (count > limit_) {
      throw Error(ErrorCode::kNodeLimitExceeded,
                  "branch-and-bound node limit of " + std::to_string(limit_) +
                      " exceeded");
    }
    shared.lp_calls.fetch_add(1);
    const LpResult lp = lp_feasible(builder_.build(node), opts_.tol.lp);
    if (lp.status != LpStatus::kOptimal) return {};

    const std::size_t n = inst_.n();
    if (node.depth == n) {
      record_leaf(node, lp.point, shared);
      return {};
    }

    std::size_t pick = n;
    std::int8_t first = 0;
    if (opts_.branching == Branching::kIndexOrder) {
      for (std::size_t i = 0; i < n && pick == n; ++i) {
        if (node.fixed[i] < 0) pick = i;
      }
      first = 0;
    } else {
      double best = -1.0;
      for (std::size_t i = 0; i < n; ++i) {
        if (node.fixed[i] >= 0) continue;
        const double r = lp.point[builder_.layout().intercept(i)];
        if (r > best) {
          best = r;
          pick = i;
        }
      }
      first = best > opts_.tol.zero ? 1 : 0;
    }
    return {node.with(pick, first), node.with(pick, static_cast<std::int8_t>(1 - first))};
  }

  void dfs(NodeState root, SearchShared& shared) const {
    std::vector<NodeState> stack;
    stack.push_back(std::move(root));
    while (!stack.empty() && !shared.stop.load()) {
      NodeState node = std::move(stack.back());
      stack.pop_back();
      std::vector<NodeState> children = expand(node, shared);
      for (auto it = children.rbegin(); it != children.rend(); ++it) {
        stack.push_back(std::move(*it));
      }
    }
  }

  std::size_t limit() const noexcept { return limit_; }

 private:
  void record_leaf(const NodeState& node, const Vector& point, SearchShared& shared) const {
    std::vector<std::uint8_t> support(node.fixed.begin(), node.fixed.end());
    SolveReport rep;
    rep.tolerances = opts_.tol;
    rep.policy = builder_.extract_policy(point, support, opts_.tol.zero);
    rep.verification = verify_policy(inst_, basis_, *rep.policy, opts_.tol);
    if (rep.verification->verified()) {
      rep.status = SolveStatus::kFeasible;
    } else {
      rep.status = SolveStatus::kNumericalFailure;
      rep.message = "leaf LP feasible but its policy failed verification: " +
                    rep.verification->violations.front();
    }
    std::lock_guard lock(shared.mutex);
    if (!shared.found) shared.found = std::move(rep);
    shared.stop.store(true);
  }

  const Instance& inst_;
  const LinHullBasis& basis_;
  BnbOptions opts_;
  NodeLpBuilder builder_;
  std::size_t limit_;
};

SolveReport finish(SearchShared& shared, const Tolerances& tol) {
  SolveReport rep;
  rep.tolerances = tol;
  if (shared.found) rep = std::move(*shared.found);
  rep.nodes_explored = shared.nodes.load();
  rep.lp_calls = shared.lp_calls.load();
  if (!shared.found) {
    rep.status = SolveStatus::kInfeasible;
    rep.message = "search tree exhausted: no affine robust solution exists";
  }
  return rep;
}

SolveReport solve_parallel(const Search& search, std::size_t n, const BnbOptions& opts,
                           SearchShared& shared) {
  const unsigned threads =
      opts.threads ? opts.threads : std::max(2u, std::thread::hardware_concurrency());

  // Breadth-first expansion until there is a frontier to hand out.
  std::deque<NodeState> frontier;
  frontier.push_back(NodeState::root(n));
  while (!frontier.empty() && frontier.size() < 2 * threads && !shared.stop.load()) {
    NodeState node = std::move(frontier.front());
    frontier.pop_front();
    for (NodeState& child : search.expand(node, shared)) {
      frontier.push_back(std::move(child));
    }
  }

  std::mutex queue_mutex;
  auto worker = [&]() {
    try {
      for (;;) {
        NodeState next;
        {
          std::lock_guard lock(queue_mutex);
          if (frontier.empty() || shared.stop.load()) return;
          next = std::move(frontier.front());
          frontier.pop_front();
        }
        search.dfs(std::move(next), shared);
      }
    } catch (...) {
      std::lock_guard lock(shared.mutex);
      if (!shared.failure) shared.failure = std::current_exception();
      shared.stop.store(true);
    }
  };
  std::vector<std::jthread> pool;
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  pool.clear();  // joins
  if (shared.failure && !shared.found) std::rethrow_exception(shared.failure);
  return finish(shared, opts.tol);
}

}  // namespace

SolveReport bnb_solve(const Instance& inst, const LinHullBasis& basis,
                      const BnbOptions& opts) {
  const Search search(inst, basis, opts);
  SearchShared shared;
  if (opts.parallel) return solve_parallel(search, inst.n(), opts, shared);
  search.dfs(NodeState::root(inst.n()), shared);
  return finish(shared, opts.tol);
}

bool dual_certificate_exists(const Polyhedron& set, std::span<const double> coeffs,
                             double offset, double tol) {
  const std::size_t g = set.num_rows();
  const std::size_t k = set.dim();
  if (coeffs.size() != k) {
    throw Error(ErrorCode::kDimensionMismatch, "coefficient vector must have length k");
  }
  LpModel lp(g);
  lp.add_row(Vector(set.rhs.begin(), set.rhs.end()), Relation::kGreaterEqual, -offset);
  for (std::size_t c = 0; c < k; ++c) {
    Vector col(g);
    for (std::size_t j = 0; j < g; ++j) col[j] = set.lhs(j, c);
    lp.add_row(std::move(col), Relation::kEqual, coeffs[c]);
  }
  return lp_feasible(lp, tol).status == LpStatus::kOptimal;
}

}  // namespace aarlcp
