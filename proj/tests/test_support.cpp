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

#include "scert/support.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "scert/errors.hpp"
#include "scert/scenario.hpp"

namespace {

using scert::complexity_gap;
using scert::greedy_support;
using scert::reduce;
using scert::ScenarioSet;
using scert::SolutionRecord;
using scert::SolveOracle;
using scert::SupportResult;

// Oracle for the convex reduction itself: the solution over a sub-list is
// its columnwise minimum vector.
SolveOracle reduction_oracle(const ScenarioSet& s) {
  return [&s](const std::vector<std::size_t>& rows) {
    SolutionRecord rec;
    rec.continuous.assign(s.constraint_count(), 0.0);
    for (std::size_t l = 0; l < s.constraint_count(); ++l) {
      double best = s.at(rows.front(), l);
      for (std::size_t r : rows) best = std::min(best, s.at(r, l));
      rec.continuous[l] = best;
      rec.objective += best;
    }
    return rec;
  };
}

ScenarioSet random_set(std::mt19937& rng, std::size_t n, std::size_t q) {
  std::uniform_real_distribution<double> dist(-5.0, 5.0);
  std::vector<double> values(n * q);
  for (double& v : values) v = dist(rng);
  return ScenarioSet(n, q, std::move(values));
}

TEST(GreedySupport, RecoversTheDominantRowsOfTheReduction) {
  std::mt19937 rng(19);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 3 + rng() % 20;
    const std::size_t q = 1 + rng() % 6;
    const ScenarioSet s = random_set(rng, n, q);  // continuous: unique minima
    const auto summary = reduce(s);
    const SupportResult res = greedy_support(n, reduction_oracle(s));

    const std::set<std::size_t> expected(summary.dominant_rows.begin(),
                                         summary.dominant_rows.end());
    const std::set<std::size_t> kept(res.kept_rows.begin(), res.kept_rows.end());
    EXPECT_EQ(kept, expected) << "trial " << trial;
    EXPECT_EQ(res.s_star, summary.distinct_count);
    EXPECT_EQ(complexity_gap(res.s_star, summary.distinct_count), 0);
  }
}

TEST(GreedySupport, SingleScenarioCannotBeRemoved) {
  const ScenarioSet s = ScenarioSet::from_rows({{1.0, 2.0}});
  const SupportResult res = greedy_support(1, reduction_oracle(s));
  EXPECT_EQ(res.kept_rows, (std::vector<std::size_t>{0}));
  EXPECT_EQ(res.s_star, 1u);
  EXPECT_EQ(res.solve_count, 1u);  // just the baseline
}

TEST(GreedySupport, DominatingScenarioSurvivesAlone) {
  const ScenarioSet s = ScenarioSet::from_rows({{5, 5}, {0, 0}, {7, 9}, {2, 3}});
  const SupportResult res = greedy_support(4, reduction_oracle(s));
  EXPECT_EQ(res.kept_rows, (std::vector<std::size_t>{1}));
  EXPECT_EQ(res.s_star, 1u);
}

TEST(GreedySupport, KeptListIsIrreducible) {
  std::mt19937 rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 4 + rng() % 12;
    const std::size_t q = 2 + rng() % 4;
    const ScenarioSet s = random_set(rng, n, q);
    const SolveOracle oracle = reduction_oracle(s);
    const SupportResult res = greedy_support(n, oracle);
    ASSERT_LE(res.s_star, 15u);
    if (res.kept_rows.size() < 2) continue;

    const SolutionRecord full = oracle(res.kept_rows);
    for (std::size_t drop : res.kept_rows) {
      std::vector<std::size_t> rest;
      for (std::size_t r : res.kept_rows) {
        if (r != drop) rest.push_back(r);
      }
      EXPECT_FALSE(scert::solutions_equal(oracle(rest), full, 1e-6))
          << "row " << drop << " is removable, the list was not irreducible";
    }
  }
}

TEST(GreedySupport, SolveCountIsBaselinePlusOneTrialPerRow) {
  // Diagonal minima: every row is dominant, so every row gets its trial.
  for (const std::size_t n : {2u, 5u, 17u}) {
    std::vector<std::vector<double>> rows(n, std::vector<double>(n, 1.0));
    for (std::size_t i = 0; i < n; ++i) rows[i][i] = 0.0;
    const ScenarioSet s = ScenarioSet::from_rows(rows);
    const SupportResult res = greedy_support(n, reduction_oracle(s));
    EXPECT_EQ(res.solve_count, n + 1);
    EXPECT_EQ(res.s_star, n);
  }
  // When the kept list collapses to one row early, the remaining trials are
  // skipped: two rows, the second dominating, costs one baseline + one trial.
  const ScenarioSet s = ScenarioSet::from_rows({{3.0, 4.0}, {1.0, 2.0}});
  const SupportResult res = greedy_support(2, reduction_oracle(s));
  EXPECT_EQ(res.kept_rows, (std::vector<std::size_t>{1}));
  EXPECT_EQ(res.solve_count, 2u);
}

TEST(GreedySupport, OracleFailureCarriesPartialProgress) {
  int calls = 0;
  const SolveOracle flaky = [&calls](const std::vector<std::size_t>& rows) {
    if (++calls == 4) throw std::runtime_error("solver blew up");
    SolutionRecord rec;
    rec.continuous = {static_cast<double>(rows.size())};  // changes every removal
    return rec;
  };
  try {
    greedy_support(6, flaky);
    FAIL() << "expected solver_error";
  } catch (const scert::solver_error& e) {
    // Call 1 is the baseline, calls 2..4 probe rows 0..2.
    const std::string what = e.what();
    EXPECT_NE(what.find("row 2"), std::string::npos);
    EXPECT_NE(what.find("solver blew up"), std::string::npos);
  }
}

TEST(GreedySupport, EqualityToleranceGovernsContinuousComparisons) {
  SolutionRecord a{{1.0, 2.0}, {0, 1}, 10.0};
  SolutionRecord b{{1.0 + 5e-7, 2.0}, {0, 1}, 10.0 + 1e-8};
  EXPECT_TRUE(scert::solutions_equal(a, b, 1e-6));
  EXPECT_FALSE(scert::solutions_equal(a, b, 1e-8));
  SolutionRecord c = a;
  c.binaries[0] = 1;  // binaries compare exactly
  EXPECT_FALSE(scert::solutions_equal(a, c, 1e-6));
  SolutionRecord d = a;
  d.objective = 10.1;  // objectives compare at 1e-6 relative
  EXPECT_FALSE(scert::solutions_equal(a, d, 1e-6));
}

TEST(ComplexityGap, SignConvention) {
  EXPECT_EQ(complexity_gap(2, 2), 0);
  EXPECT_EQ(complexity_gap(3, 7), 4);
  EXPECT_EQ(complexity_gap(7, 3), -4);  // callers assert >= 0 on shared data
}

}  // namespace
