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

#ifndef SCERT_SUPPORT_HPP_
#define SCERT_SUPPORT_HPP_

#include <cmath>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "scert/errors.hpp"

// Greedy support-list reduction: strip scenarios one at a time and keep only
// those whose removal changes the solution. The surviving list is irreducible
// and its length upper-bounds the true minimal support-list size.

namespace scert {

/// Full solution record returned by a solve over a scenario sub-list.
struct SolutionRecord {
  std::vector<double> continuous;
  std::vector<int> binaries;
  double objective = 0.0;
};

/// Deterministic solve callback: identical index lists must yield identical
/// records. Indices are 0-based scenario rows.
using SolveOracle = std::function<SolutionRecord(const std::vector<std::size_t>& rows)>;

struct SupportResult {
  std::vector<std::size_t> kept_rows;
  std::size_t s_star = 0;      // kept_rows.size()
  std::size_t solve_count = 0; // total oracle invocations, baseline included
};

/// Equality test used by the greedy loop: binary parts must match exactly,
/// continuous parts within tol in max-norm, objectives within 1e-6 relative.
inline bool solutions_equal(const SolutionRecord& a, const SolutionRecord& b, double tol) {
  if (a.binaries != b.binaries) return false;
  if (a.continuous.size() != b.continuous.size()) return false;
  for (std::size_t i = 0; i < a.continuous.size(); ++i) {
    if (std::abs(a.continuous[i] - b.continuous[i]) > tol) return false;
  }
  const double scale = std::max({1.0, std::abs(a.objective), std::abs(b.objective)});
  return std::abs(a.objective - b.objective) <= 1e-6 * scale;
}

/// Greedy irreducible support sub-list over rows 0..n-1, in index order:
/// each row is temporarily removed, and discarded for good when the re-solve
/// reproduces the full-list solution. The last remaining row is never
/// removed. solve_count reports every oracle call made (1 baseline + one
/// trial per removable row).
inline SupportResult greedy_support(std::size_t n, const SolveOracle& oracle,
                                    double equality_tol = 1e-6) {
  if (n == 0) throw parameter_error("greedy_support: need at least one scenario");

  std::vector<std::size_t> kept(n);
  for (std::size_t i = 0; i < n; ++i) kept[i] = i;

  SupportResult result;
  SolutionRecord baseline;
  try {
    baseline = oracle(kept);
  } catch (const std::exception& e) {
    throw solver_error(std::string("greedy_support: baseline solve failed: ") + e.what());
  }
  result.solve_count = 1;

  for (std::size_t row = 0; row < n; ++row) {
    if (kept.size() == 1) break;  // cannot remove the only scenario
    std::vector<std::size_t> trial;
    trial.reserve(kept.size() - 1);
    for (std::size_t r : kept) {
      if (r != row) trial.push_back(r);
    }
    if (trial.size() == kept.size()) continue;  // row was already discarded

    SolutionRecord rec;
    try {
      rec = oracle(trial);
      ++result.solve_count;
    } catch (const std::exception& e) {
      throw solver_error("greedy_support: oracle failed while probing row " +
                         std::to_string(row) + " of " + std::to_string(n) + " (kept so far: " +
                         std::to_string(kept.size()) + "): " + e.what());
    }
    if (solutions_equal(rec, baseline, equality_tol)) kept = std::move(trial);
  }

  result.kept_rows = std::move(kept);
  result.s_star = result.kept_rows.size();
  return result;
}

/// Slack between the dominant-row complexity and the greedy support size;
/// non-negative whenever both are computed on the same data and problem.
inline long complexity_gap(std::size_t s_star, std::size_t sigma) {
  return static_cast<long>(sigma) - static_cast<long>(s_star);
}

}  // namespace scert

#endif  // SCERT_SUPPORT_HPP_
