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

#ifndef SCERT_SIZING_HPP_
#define SCERT_SIZING_HPP_

#include <cmath>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "scert/certmath.hpp"
#include "scert/errors.hpp"
#include "scert/scenario.hpp"

// Data-set sizing: how many scenarios to collect so that a decision feasible
// for all of them carries a prescribed risk bound eps_bar with confidence
// 1 - beta. One-shot sizing fixes the count up front; the incremental driver
// grows the data-set in stages and stops early when the observed complexity
// permits.

namespace scert {

struct SizingSpec {
  std::size_t q = 0;      // constraint components
  double eps_bar = 0.0;   // target risk bound, in (0,1)
  double beta = 0.0;      // confidence parameter, in (0,1)

  void validate() const {
    if (q == 0) throw parameter_error("SizingSpec: q must be >= 1");
    if (!(eps_bar > 0.0 && eps_bar < 1.0)) {
      throw parameter_error("SizingSpec: eps_bar must lie in (0,1), got " +
                            std::to_string(eps_bar));
    }
    if (!(beta > 0.0 && beta < 1.0)) {
      throw parameter_error("SizingSpec: beta must lie in (0,1), got " + std::to_string(beta));
    }
  }
};

namespace detail {

// Smallest M >= start satisfying a predicate that is monotone in M
// (false...false true...true). Exponential bracketing, then binary search.
inline std::size_t smallest_satisfying(std::size_t start,
                                       const std::function<bool(std::size_t)>& pred) {
  constexpr std::size_t kCap = 100'000'000;
  if (pred(start)) return start;
  std::size_t lo = start;         // pred(lo) == false
  std::size_t hi = start * 2 + 1;
  while (!pred(hi)) {
    lo = hi;
    hi *= 2;
    if (hi > kCap) throw solver_error("sizing search exceeded " + std::to_string(kCap));
  }
  while (hi - lo > 1) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (pred(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

}  // namespace detail

/// Smallest M >= q whose binomial lower tail at threshold q with success
/// probability eps_bar is at most beta. A decision made on M scenarios then
/// carries risk <= eps_bar with confidence 1 - beta, before any data is seen.
inline std::size_t one_shot_size(const SizingSpec& spec) {
  spec.validate();
  const double log_beta = std::log(spec.beta);
  return detail::smallest_satisfying(spec.q, [&](std::size_t m) {
    return log_binomial_lower_tail(m, spec.q, spec.eps_bar) <= log_beta;
  });
}

/// Smallest M >= q with violation_level(M, beta, q) <= eps_bar. Never smaller
/// than one_shot_size for the same spec.
inline std::size_t eps_based_size(const SizingSpec& spec) {
  spec.validate();
  return detail::smallest_satisfying(spec.q, [&](std::size_t m) {
    return violation_level(m, spec.beta, spec.q) <= spec.eps_bar;
  });
}

/// Stage thresholds of the incremental procedure, rows j = 0..q:
///   m_bar[j]   one-shot size with q replaced by j (m_bar[0] = m_bar[1]),
///   beta_j[j]  the confidence budget beta / ((q+1) * (m_bar[j]+1)),
///   n_j[j]     smallest N > m_bar[j] with
///                beta_j * sum_{m=j}^{m_bar[j]} C(m,j) (1-eps_bar)^(m-j)
///                  >= C(N,j) (1-eps_bar)^(N-j).
struct IncrementalSchedule {
  std::vector<std::size_t> m_bar;
  std::vector<double> beta_j;
  std::vector<std::size_t> n_j;
};

/// Computes the schedule above. The n_j inequality's right side is not
/// monotone in N from the start, so N is scanned upward from m_bar[j]+1 and
/// the first satisfying value is returned; the left side is evaluated once
/// per stage, in the log domain.
inline IncrementalSchedule incremental_schedule(const SizingSpec& spec) {
  spec.validate();
  const std::size_t q = spec.q;
  IncrementalSchedule sched;
  sched.m_bar.resize(q + 1);
  sched.beta_j.resize(q + 1);
  sched.n_j.resize(q + 1);

  for (std::size_t j = 1; j <= q; ++j) {
    sched.m_bar[j] = one_shot_size(SizingSpec{j, spec.eps_bar, spec.beta});
  }
  sched.m_bar[0] = sched.m_bar[1];

  const double log_1me = std::log1p(-spec.eps_bar);
  constexpr std::size_t kCap = 100'000'000;
  for (std::size_t j = 0; j <= q; ++j) {
    const std::size_t m_bar = sched.m_bar[j];
    sched.beta_j[j] = spec.beta / (static_cast<double>(q + 1) * static_cast<double>(m_bar + 1));

    double lhs = kNegInf;
    for (std::size_t m = j; m <= m_bar; ++m) {
      lhs = log_add(lhs, log_choose(m, j) + static_cast<double>(m - j) * log_1me);
    }
    lhs += std::log(sched.beta_j[j]);

    std::size_t n = m_bar + 1;
    while (log_choose(n, j) + static_cast<double>(n - j) * log_1me > lhs) {
      ++n;
      if (n > kCap) throw solver_error("incremental_schedule: stage search exceeded cap");
    }
    sched.n_j[j] = n;
  }
  return sched;
}

/// Pull-based supplier of scenario rows (constraint right-hand sides).
/// Successive calls never repeat a row; returns nullopt when exhausted.
class ScenarioSource {
 public:
  virtual ~ScenarioSource() = default;
  virtual std::optional<std::vector<double>> next() = 0;
  virtual std::size_t dimension() const = 0;
};

/// Source backed by a fixed list of rows, consumed in order.
class VectorScenarioSource : public ScenarioSource {
 public:
  explicit VectorScenarioSource(std::vector<std::vector<double>> rows)
      : rows_(std::move(rows)) {}

  std::optional<std::vector<double>> next() override {
    if (cursor_ >= rows_.size()) return std::nullopt;
    return rows_[cursor_++];
  }

  std::size_t dimension() const override { return rows_.empty() ? 0 : rows_.front().size(); }

 private:
  std::vector<std::vector<double>> rows_;
  std::size_t cursor_ = 0;
};

/// Solves the reduced problem: given the q-vector of tightest right-hand
/// sides, returns a feasible decision's constraint image and objective.
/// The returned image must satisfy g <= rhs componentwise.
struct ReducedSolution {
  Decision decision;
  double objective = 0.0;
};
using ReducedSolver = std::function<ReducedSolution(const std::vector<double>& rhs)>;

struct IncrementalRun {
  Decision decision;
  double objective = 0.0;
  std::size_t n_used = 0;
  std::size_t j_stop = 0;
  std::vector<std::size_t> complexity_trace;  // distinct dominant rows per stage
};

/// Staged scenario collection. At stage j, rows are pulled until n_j[j] are
/// available and the convex reduction's distinct dominant-row count is
/// computed; the first stage where that count is <= j triggers the reduced
/// solve and returns. Stage q always triggers, so termination is guaranteed.
/// Throws insufficient_data_error if the source dries up first, and
/// contract_error if the solver's decision is infeasible for the reduction.
inline IncrementalRun run_incremental(const SizingSpec& spec, ScenarioSource& source,
                                      const ReducedSolver& solver) {
  spec.validate();
  const IncrementalSchedule sched = incremental_schedule(spec);
  std::vector<std::vector<double>> rows;
  IncrementalRun run;

  for (std::size_t j = 0; j <= spec.q; ++j) {
    while (rows.size() < sched.n_j[j]) {
      auto row = source.next();
      if (!row) throw insufficient_data_error(sched.n_j[j], rows.size());
      if (row->size() != spec.q) {
        throw data_error("run_incremental: source row has " + std::to_string(row->size()) +
                         " components, expected " + std::to_string(spec.q));
      }
      rows.push_back(std::move(*row));
    }
    const ScenarioSet set = ScenarioSet::from_rows(rows);
    const DominanceSummary summary = reduce(set);
    run.complexity_trace.push_back(summary.distinct_count);
    if (summary.distinct_count <= j) {
      ReducedSolution sol = solver(summary.reduced_rhs);
      sol.decision.validate();
      if (sol.decision.g.size() != spec.q) {
        throw contract_error("run_incremental: solver returned a decision of wrong dimension");
      }
      for (std::size_t l = 0; l < spec.q; ++l) {
        if (sol.decision.g[l] > summary.reduced_rhs[l] + 1e-7) {
          throw contract_error("run_incremental: solver decision violates the reduced "
                               "right-hand side at component " + std::to_string(l));
        }
      }
      run.decision = std::move(sol.decision);
      run.objective = sol.objective;
      run.n_used = rows.size();
      run.j_stop = j;
      return run;
    }
  }
  throw solver_error("run_incremental: unreachable: stage q cannot fail");
}

}  // namespace scert

#endif  // SCERT_SIZING_HPP_
