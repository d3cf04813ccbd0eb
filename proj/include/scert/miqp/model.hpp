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

#ifndef SCERT_MIQP_MODEL_HPP_
#define SCERT_MIQP_MODEL_HPP_

#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "scert/errors.hpp"

namespace scert::miqp {

enum class Relation { kLe, kGe, kEq };

struct LinearRow {
  std::vector<std::pair<std::size_t, double>> terms;  // (variable, coefficient)
  Relation relation = Relation::kLe;
  double rhs = 0.0;
  std::string tag;
};

/// Convex mixed-binary program with a separable quadratic objective:
///
///   min  sum_i quad_diag[i] * x_i^2 + lin_cost[i] * x_i
///   s.t. linear rows (<=, >=, =), variable bounds, x_i binary for flagged i.
///
/// quad_diag must be >= 0 and binary variables are boxed to [0,1].
class MiqpModel {
 public:
  std::size_t add_continuous(std::string name, double lower, double upper, double quad = 0.0,
                             double lin = 0.0) {
    if (quad < 0.0) throw model_error("variable '" + name + "': negative quadratic cost");
    if (lower > upper) throw model_error("variable '" + name + "': empty bound interval");
    names_.push_back(std::move(name));
    lower_.push_back(lower);
    upper_.push_back(upper);
    quad_diag_.push_back(quad);
    lin_cost_.push_back(lin);
    is_binary_.push_back(false);
    return names_.size() - 1;
  }

  std::size_t add_binary(std::string name, double lin = 0.0) {
    const std::size_t idx = add_continuous(std::move(name), 0.0, 1.0, 0.0, lin);
    is_binary_[idx] = true;
    return idx;
  }

  void add_row(LinearRow row) {
    for (const auto& [var, coeff] : row.terms) {
      if (var >= names_.size()) {
        throw model_error("row '" + row.tag + "': variable index out of range");
      }
      if (!std::isfinite(coeff)) throw model_error("row '" + row.tag + "': non-finite coefficient");
    }
    rows_.push_back(std::move(row));
  }

  std::size_t total_vars() const { return names_.size(); }
  std::size_t binary_count() const {
    std::size_t c = 0;
    for (bool b : is_binary_) c += b;
    return c;
  }
  std::size_t continuous_count() const { return total_vars() - binary_count(); }

  bool is_binary(std::size_t i) const { return is_binary_[i]; }
  double lower(std::size_t i) const { return lower_[i]; }
  double upper(std::size_t i) const { return upper_[i]; }
  double quad(std::size_t i) const { return quad_diag_[i]; }
  double lin(std::size_t i) const { return lin_cost_[i]; }
  const std::string& name(std::size_t i) const { return names_[i]; }
  const std::vector<LinearRow>& rows() const { return rows_; }

  double objective_value(const std::vector<double>& x) const {
    double obj = 0.0;
    for (std::size_t i = 0; i < total_vars(); ++i) {
      obj += quad_diag_[i] * x[i] * x[i] + lin_cost_[i] * x[i];
    }
    return obj;
  }

  double row_value(const LinearRow& row, const std::vector<double>& x) const {
    double v = 0.0;
    for (const auto& [var, coeff] : row.terms) v += coeff * x[var];
    return v;
  }

  /// Largest violation of rows, bounds and binary integrality at x.
  double max_violation(const std::vector<double>& x) const {
    double worst = 0.0;
    for (const auto& row : rows_) {
      const double v = row_value(row, x);
      double viol = 0.0;
      switch (row.relation) {
        case Relation::kLe: viol = v - row.rhs; break;
        case Relation::kGe: viol = row.rhs - v; break;
        case Relation::kEq: viol = std::abs(v - row.rhs); break;
      }
      if (viol > worst) worst = viol;
    }
    for (std::size_t i = 0; i < total_vars(); ++i) {
      worst = std::max(worst, lower_[i] - x[i]);
      worst = std::max(worst, x[i] - upper_[i]);
      if (is_binary_[i]) worst = std::max(worst, std::abs(x[i] - std::round(x[i])));
    }
    return worst;
  }

 private:
  std::vector<std::string> names_;
  std::vector<double> lower_, upper_;
  std::vector<double> quad_diag_, lin_cost_;
  std::vector<bool> is_binary_;
  std::vector<LinearRow> rows_;
};

enum class SolveStatus { kOptimal, kInfeasible, kNodeLimit };

struct SolveOutcome {
  SolveStatus status = SolveStatus::kInfeasible;
  std::vector<double> assignment;  // empty when no feasible point was found
  double objective = std::numeric_limits<double>::infinity();
  std::size_t nodes_explored = 0;
  double best_bound = -std::numeric_limits<double>::infinity();
  bool objective_tie = false;  // set by enumeration when two fixings tie
};

}  // namespace scert::miqp

#endif  // SCERT_MIQP_MODEL_HPP_
