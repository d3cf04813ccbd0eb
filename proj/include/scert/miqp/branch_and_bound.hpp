// Copyright 2026 The scert authors
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

#ifndef SCERT_MIQP_BRANCH_AND_BOUND_HPP_
#define SCERT_MIQP_BRANCH_AND_BOUND_HPP_

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <memory>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include "scert/errors.hpp"
#include "scert/miqp/model.hpp"
#include "scert/miqp/qp_solver.hpp"

// Best-first branch and bound over the binary variables, with the convex QP
// relaxation solved at every node. Branching picks the most fractional
// binary, ties to the lowest variable index; node order is (bound, id), so
// runs are deterministic for identical inputs.

namespace scert::miqp {

namespace detail {

inline QpProblem base_relaxation(const MiqpModel& m) {
  const Eigen::Index n = static_cast<Eigen::Index>(m.total_vars());
  std::size_t n_le = 0, n_eq = 0;
  for (const auto& row : m.rows()) {
    if (row.relation == Relation::kEq) {
      ++n_eq;
    } else {
      ++n_le;
    }
  }
  QpProblem qp;
  qp.quad_diag.resize(n);
  qp.lin_cost.resize(n);
  qp.lower.resize(n);
  qp.upper.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    qp.quad_diag[i] = m.quad(i);
    qp.lin_cost[i] = m.lin(i);
    qp.lower[i] = m.lower(i);
    qp.upper[i] = m.upper(i);
  }
  qp.ineq = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n_le), n);
  qp.ineq_rhs.resize(static_cast<Eigen::Index>(n_le));
  qp.eq = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n_eq), n);
  qp.eq_rhs.resize(static_cast<Eigen::Index>(n_eq));
  Eigen::Index le_r = 0, eq_r = 0;
  for (const auto& row : m.rows()) {
    const double sign = row.relation == Relation::kGe ? -1.0 : 1.0;
    if (row.relation == Relation::kEq) {
      for (const auto& [var, coeff] : row.terms) qp.eq(eq_r, static_cast<Eigen::Index>(var)) += coeff;
      qp.eq_rhs[eq_r] = row.rhs;
      ++eq_r;
    } else {
      for (const auto& [var, coeff] : row.terms) {
        qp.ineq(le_r, static_cast<Eigen::Index>(var)) += sign * coeff;
      }
      qp.ineq_rhs[le_r] = sign * row.rhs;
      ++le_r;
    }
  }
  return qp;
}

}  // namespace detail

/// Solves the model to the requested absolute bound gap (or until the node
/// budget runs out). The returned assignment has binaries rounded to exact
/// 0/1 values and is feasible for the model within 1e-7.
inline SolveOutcome solve_bb(const MiqpModel& m, double gap_tol = 1e-7,
                             std::size_t node_limit = 100000) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  constexpr double kIntTol = 1e-7;

  QpProblem qp = detail::base_relaxation(m);
  const Eigen::Index n = qp.vars();
  std::vector<Eigen::Index> binaries;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (m.is_binary(static_cast<std::size_t>(i))) binaries.push_back(i);
  }

  struct Node {
    double bound;
    std::uint64_t id;
    std::vector<std::pair<Eigen::Index, double>> fixings;  // (var, value)
    std::shared_ptr<QpWarmStart> warm;
  };
  struct NodeOrder {
    bool operator()(const Node& a, const Node& b) const {
      if (a.bound != b.bound) return a.bound > b.bound;  // min-heap on bound
      return a.id > b.id;
    }
  };
  std::priority_queue<Node, std::vector<Node>, NodeOrder> open;
  std::uint64_t next_id = 0;
  open.push(Node{-kInf, next_id++, {}, nullptr});

  SolveOutcome out;
  out.objective = kInf;
  double incumbent = kInf;
  std::vector<double> incumbent_x;
  double proven_bound = -kInf;
  bool limit_hit = false;

  const Eigen::VectorXd base_lower = qp.lower;
  const Eigen::VectorXd base_upper = qp.upper;

  while (!open.empty()) {
    const Node node = open.top();
    open.pop();
    if (node.bound >= incumbent - gap_tol && std::isfinite(incumbent)) {
      // Best-first order: every remaining node is at least as weakly bounded.
      proven_bound = std::max(proven_bound, node.bound);
      break;
    }
    if (out.nodes_explored >= node_limit) {
      limit_hit = true;
      proven_bound = std::max(proven_bound, node.bound);
      break;
    }

    qp.lower = base_lower;
    qp.upper = base_upper;
    for (const auto& [var, val] : node.fixings) {
      qp.lower[var] = val;
      qp.upper[var] = val;
    }
    ++out.nodes_explored;
    const QpResult rel = solve_qp(qp, node.warm.get());
    if (rel.status == QpStatus::kInfeasible) continue;
    if (rel.status != QpStatus::kOptimal) {
      throw solver_error("solve_bb: node relaxation failed (status " +
                         std::to_string(static_cast<int>(rel.status)) + ")");
    }
    if (rel.stationarity > 1e-8 || rel.feasibility > 1e-8 || rel.complementarity > 1e-8) {
      throw solver_error("solve_bb: node relaxation exceeded the residual budget");
    }
    if (rel.objective >= incumbent - gap_tol) continue;

    Eigen::Index branch_var = -1;
    double best_frac = kIntTol;
    for (Eigen::Index b : binaries) {
      const double v = rel.x[b];
      const double frac = std::min(v - std::floor(v), std::ceil(v) - v);
      if (frac > best_frac) {
        best_frac = frac;
        branch_var = b;
      }
    }

    if (branch_var < 0) {
      // Integral relaxation: a new incumbent.
      std::vector<double> x(static_cast<std::size_t>(n));
      for (Eigen::Index i = 0; i < n; ++i) x[static_cast<std::size_t>(i)] = rel.x[i];
      for (Eigen::Index b : binaries) x[static_cast<std::size_t>(b)] = std::round(rel.x[b]);
      const double obj = m.objective_value(x);
      if (obj < incumbent) {
        incumbent = obj;
        incumbent_x = std::move(x);
      }
      continue;
    }

    auto warm = std::make_shared<QpWarmStart>();
    warm->x = rel.x;
    warm->active = rel.active;
    for (double val : {0.0, 1.0}) {
      Node child;
      child.bound = rel.objective;
      child.id = next_id++;
      child.fixings = node.fixings;
      child.fixings.emplace_back(branch_var, val);
      child.warm = warm;
      open.push(child);
    }
  }

  if (open.empty()) proven_bound = incumbent;

  if (incumbent_x.empty()) {
    out.status = limit_hit ? SolveStatus::kNodeLimit : SolveStatus::kInfeasible;
    out.best_bound = proven_bound;
    return out;
  }
  out.status = limit_hit ? SolveStatus::kNodeLimit : SolveStatus::kOptimal;
  out.assignment = incumbent_x;
  out.objective = incumbent;
  out.best_bound = std::isfinite(proven_bound) ? std::min(proven_bound, incumbent) : incumbent;
  if (m.max_violation(out.assignment) > 1e-7) {
    throw solver_error("solve_bb: incumbent failed the feasibility check");
  }
  return out;
}

/// Exhaustive ground truth for small models: every binary fixing is tried in
/// lexicographic order (first binary most significant) and the best feasible
/// continuous completion wins. Ties within 1e-9 relative keep the earlier,
/// lexicographically smaller fixing and set objective_tie.
inline SolveOutcome solve_enum(const MiqpModel& m) {
  constexpr std::size_t kMaxBinaries = 24;
  QpProblem qp = detail::base_relaxation(m);
  const Eigen::Index n = qp.vars();
  std::vector<Eigen::Index> binaries;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (m.is_binary(static_cast<std::size_t>(i))) binaries.push_back(i);
  }
  if (binaries.size() > kMaxBinaries) {
    throw solver_error("solve_enum: " + std::to_string(binaries.size()) +
                       " binaries exceed the enumeration cap of " + std::to_string(kMaxBinaries));
  }

  const Eigen::VectorXd base_lower = qp.lower;
  const Eigen::VectorXd base_upper = qp.upper;
  const std::size_t nb = binaries.size();
  const std::uint64_t combos = std::uint64_t{1} << nb;

  SolveOutcome out;
  out.objective = std::numeric_limits<double>::infinity();
  bool found = false;

  for (std::uint64_t code = 0; code < combos; ++code) {
    qp.lower = base_lower;
    qp.upper = base_upper;
    for (std::size_t j = 0; j < nb; ++j) {
      // Bit 0 of code is the last binary: code counts lexicographically.
      const double bit = static_cast<double>((code >> (nb - 1 - j)) & 1u);
      qp.lower[binaries[j]] = bit;
      qp.upper[binaries[j]] = bit;
    }
    ++out.nodes_explored;
    const QpResult res = solve_qp(qp);
    if (res.status == QpStatus::kInfeasible) continue;
    if (res.status != QpStatus::kOptimal) {
      throw solver_error("solve_enum: continuous solve failed");
    }
    std::vector<double> x(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) x[static_cast<std::size_t>(i)] = res.x[i];
    for (std::size_t j = 0; j < nb; ++j) {
      x[static_cast<std::size_t>(binaries[j])] = std::round(res.x[binaries[j]]);
    }
    const double obj = m.objective_value(x);
    const double tie_tol = 1e-9 * std::max(1.0, std::abs(out.objective));
    if (!found) {
      found = true;
      out.objective = obj;
      out.assignment = std::move(x);
    } else if (obj < out.objective - tie_tol) {
      out.objective = obj;
      out.assignment = std::move(x);
    } else if (obj <= out.objective + tie_tol) {
      out.objective_tie = true;  // keep the earlier, lexicographically smaller fixing
    }
  }

  out.status = found ? SolveStatus::kOptimal : SolveStatus::kInfeasible;
  out.best_bound = found ? out.objective : -std::numeric_limits<double>::infinity();
  return out;
}

}  // namespace scert::miqp

#endif  // SCERT_MIQP_BRANCH_AND_BOUND_HPP_
