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

#ifndef SCERT_SCENARIO_HPP_
#define SCERT_SCENARIO_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <istream>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "scert/certmath.hpp"
#include "scert/csv.hpp"
#include "scert/errors.hpp"

// Scenario sets with constraints of the form  g(x) <= b(scenario):
// uncertainty enters only the right-hand side, so columnwise minima of the
// b-matrix fully describe the feasible region, and a decision is carried by
// its constraint image g(x) alone.

namespace scert {

/// N scenarios of q-dimensional constraint right-hand sides, stored row-major.
class ScenarioSet {
 public:
  ScenarioSet(std::size_t n, std::size_t q, std::vector<double> values)
      : n_(n), q_(q), values_(std::move(values)) {
    if (n_ == 0 || q_ == 0) throw parameter_error("ScenarioSet: need N >= 1 and q >= 1");
    if (values_.size() != n_ * q_) {
      throw parameter_error("ScenarioSet: value buffer size " + std::to_string(values_.size()) +
                            " does not match " + std::to_string(n_) + "x" + std::to_string(q_));
    }
    for (double v : values_) {
      if (!std::isfinite(v)) throw data_error("ScenarioSet: non-finite entry");
    }
  }

  static ScenarioSet from_rows(const std::vector<std::vector<double>>& rows) {
    if (rows.empty()) throw parameter_error("ScenarioSet: need at least one scenario row");
    const std::size_t q = rows.front().size();
    std::vector<double> flat;
    flat.reserve(rows.size() * q);
    for (const auto& r : rows) {
      if (r.size() != q) throw data_error("ScenarioSet: ragged rows");
      flat.insert(flat.end(), r.begin(), r.end());
    }
    return ScenarioSet(rows.size(), q, std::move(flat));
  }

  /// One row per scenario, q numeric columns; an optional header row is
  /// detected by a non-numeric first token.
  static ScenarioSet load_csv(const std::string& path) {
    return from_rows(read_numeric_csv_file(path).rows);
  }
  static ScenarioSet load_csv(std::istream& in, const std::string& source_name) {
    return from_rows(read_numeric_csv(in, source_name).rows);
  }

  std::size_t scenario_count() const { return n_; }
  std::size_t constraint_count() const { return q_; }

  double at(std::size_t i, std::size_t l) const { return values_[i * q_ + l]; }
  std::span<const double> row(std::size_t i) const { return {values_.data() + i * q_, q_}; }
  const std::vector<double>& values() const { return values_; }

 private:
  std::size_t n_;
  std::size_t q_;
  std::vector<double> values_;
};

/// A candidate decision, represented by its constraint image g(x).
struct Decision {
  std::vector<double> g;

  void validate() const {
    for (double v : g) {
      if (!std::isfinite(v)) throw data_error("Decision: non-finite constraint image entry");
    }
  }
};

/// Result of the convex reduction: per column, the tightest (smallest)
/// right-hand side, the 0-based row that supplies it, and the number of
/// distinct such rows.
struct DominanceSummary {
  std::vector<double> reduced_rhs;       // columnwise minima of b
  std::vector<std::size_t> dominant_rows;  // row attaining each minimum
  std::size_t distinct_count = 0;
};

/// Tie handling when a columnwise minimum is attained by several rows.
/// kSmallestIndex keeps the smallest row index. kMinimizeCount picks the
/// representatives so that the number of distinct rows is minimal, via an
/// exact hitting-set search over the tied columns (at most 20 of them).
enum class TieBreak { kSmallestIndex, kMinimizeCount };

namespace detail {

// Exact minimum hitting set: choose the fewest extra rows so that every
// candidate list intersects forced-or-chosen rows. Depth-first search
// branching on the first uncovered list, candidates in ascending order.
class HittingSetSearch {
 public:
  HittingSetSearch(const std::vector<std::vector<std::size_t>>& lists,
                   std::set<std::size_t> forced)
      : lists_(lists), chosen_(std::move(forced)) {}

  std::set<std::size_t> run() {
    best_extra_ = lists_.size() + 1;
    extra_ = 0;
    dfs(0);
    return best_;
  }

 private:
  void dfs(std::size_t from) {
    std::size_t col = from;
    while (col < lists_.size() && covered(lists_[col])) ++col;
    if (col == lists_.size()) {
      if (extra_ < best_extra_) {
        best_extra_ = extra_;
        best_ = chosen_;
      }
      return;
    }
    if (extra_ + 1 >= best_extra_) return;
    for (std::size_t r : lists_[col]) {
      chosen_.insert(r);
      ++extra_;
      dfs(col + 1);
      --extra_;
      chosen_.erase(r);
    }
  }

  bool covered(const std::vector<std::size_t>& list) const {
    return std::any_of(list.begin(), list.end(),
                       [&](std::size_t r) { return chosen_.count(r) > 0; });
  }

  const std::vector<std::vector<std::size_t>>& lists_;
  std::set<std::size_t> chosen_;
  std::set<std::size_t> best_;
  std::size_t best_extra_ = 0;
  std::size_t extra_ = 0;
};

}  // namespace detail

/// Convex reduction. Ties are decided by exact floating-point equality;
/// callers that want tolerance-based ties must pre-round their data.
inline DominanceSummary reduce(const ScenarioSet& s, TieBreak tie_break = TieBreak::kSmallestIndex) {
  const std::size_t n = s.scenario_count();
  const std::size_t q = s.constraint_count();
  DominanceSummary out;
  out.reduced_rhs.resize(q);
  out.dominant_rows.resize(q);

  // Argmin lists per column; the smallest index comes first by scan order.
  std::vector<std::vector<std::size_t>> argmin(q);
  for (std::size_t l = 0; l < q; ++l) {
    double best = s.at(0, l);
    argmin[l].push_back(0);
    for (std::size_t i = 1; i < n; ++i) {
      const double v = s.at(i, l);
      if (v < best) {
        best = v;
        argmin[l].clear();
        argmin[l].push_back(i);
      } else if (v == best) {
        argmin[l].push_back(i);
      }
    }
    out.reduced_rhs[l] = best;
  }

  if (tie_break == TieBreak::kSmallestIndex) {
    for (std::size_t l = 0; l < q; ++l) out.dominant_rows[l] = argmin[l].front();
  } else {
    std::vector<std::vector<std::size_t>> tied;
    std::set<std::size_t> forced;
    for (std::size_t l = 0; l < q; ++l) {
      if (argmin[l].size() == 1) forced.insert(argmin[l].front());
    }
    for (std::size_t l = 0; l < q; ++l) {
      if (argmin[l].size() > 1) tied.push_back(argmin[l]);
    }
    if (tied.size() > 20) {
      throw parameter_error("reduce: count-minimizing tie-break supports at most 20 tied "
                            "columns, got " + std::to_string(tied.size()));
    }
    const std::set<std::size_t> chosen = detail::HittingSetSearch(tied, forced).run();
    for (std::size_t l = 0; l < q; ++l) {
      std::size_t pick = argmin[l].front();
      for (std::size_t r : argmin[l]) {
        if (chosen.count(r)) {
          pick = r;
          break;
        }
      }
      out.dominant_rows[l] = pick;
    }
  }

  std::set<std::size_t> distinct(out.dominant_rows.begin(), out.dominant_rows.end());
  out.distinct_count = distinct.size();
  return out;
}

/// True iff some component of g strictly exceeds the scenario's right-hand
/// side; equality is feasible.
inline bool violates(const Decision& d, std::span<const double> b_row) {
  if (d.g.size() != b_row.size()) {
    throw data_error("violates: decision has " + std::to_string(d.g.size()) +
                     " components, scenario row has " + std::to_string(b_row.size()));
  }
  for (std::size_t l = 0; l < b_row.size(); ++l) {
    if (d.g[l] > b_row[l]) return true;
  }
  return false;
}

/// Fraction of validation scenarios the decision violates.
inline double empirical_risk(const Decision& d, const ScenarioSet& validation) {
  std::size_t violated = 0;
  for (std::size_t i = 0; i < validation.scenario_count(); ++i) {
    if (violates(d, validation.row(i))) ++violated;
  }
  return static_cast<double>(violated) / static_cast<double>(validation.scenario_count());
}

/// Per-sample dominance: a decision feasible for the training set (g <= the
/// reduced right-hand sides) can only violate a probe scenario that the
/// reduction itself violates. Checks that implication on every probe row.
/// Throws contract_error if the decision is not training-feasible.
inline bool dominance_check(const Decision& d, const DominanceSummary& summary,
                            const ScenarioSet& probe) {
  if (d.g.size() != summary.reduced_rhs.size()) {
    throw data_error("dominance_check: dimension mismatch");
  }
  for (std::size_t l = 0; l < d.g.size(); ++l) {
    if (d.g[l] > summary.reduced_rhs[l]) {
      throw contract_error("dominance_check: decision is infeasible for the training set at "
                           "component " + std::to_string(l));
    }
  }
  const Decision reduction{summary.reduced_rhs};
  for (std::size_t i = 0; i < probe.scenario_count(); ++i) {
    if (violates(d, probe.row(i)) && !violates(reduction, probe.row(i))) return false;
  }
  return true;
}

/// A risk certificate together with the parameters it was computed from.
struct CertificateReport {
  enum class Kind { kAPosteriori, kAPriori };
  Kind kind = Kind::kAPosteriori;
  double epsilon = 0.0;
  double beta = 0.0;
  std::size_t n_scenarios = 0;
  std::optional<std::size_t> complexity_used;
};

/// A-posteriori certificate: the violation level evaluated at the number of
/// distinct dominant rows of the scenario set.
inline CertificateReport a_posteriori_certificate(const ScenarioSet& s, double beta) {
  const DominanceSummary summary = reduce(s);
  CertificateReport report;
  report.kind = CertificateReport::Kind::kAPosteriori;
  report.beta = beta;
  report.n_scenarios = s.scenario_count();
  report.complexity_used = summary.distinct_count;
  report.epsilon = violation_level(s.scenario_count(), beta, summary.distinct_count);
  return report;
}

/// A-priori certificate: valid before seeing any data, from the scenario
/// count and the number of constraint components alone.
inline CertificateReport a_priori_certificate(std::size_t n, std::size_t q, double beta) {
  CertificateReport report;
  report.kind = CertificateReport::Kind::kAPriori;
  report.beta = beta;
  report.n_scenarios = n;
  report.epsilon = a_priori_epsilon(n, q, beta);
  return report;
}

}  // namespace scert

#endif  // SCERT_SCENARIO_HPP_
