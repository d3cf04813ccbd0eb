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

#include "scert/scenario.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>

#include "scert/certmath.hpp"
#include "scert/errors.hpp"

namespace {

using scert::a_posteriori_certificate;
using scert::a_priori_certificate;
using scert::Decision;
using scert::dominance_check;
using scert::DominanceSummary;
using scert::empirical_risk;
using scert::reduce;
using scert::ScenarioSet;
using scert::TieBreak;
using scert::violates;
using scert::violation_level;

ScenarioSet random_set(std::mt19937& rng, std::size_t n, std::size_t q) {
  std::uniform_real_distribution<double> dist(-10.0, 10.0);
  std::vector<double> values(n * q);
  for (double& v : values) v = dist(rng);
  return ScenarioSet(n, q, std::move(values));
}

TEST(Reduce, ColumnMinimaAndDistinctRows) {
  const ScenarioSet s = ScenarioSet::from_rows({{1, 5}, {2, 0}, {3, 3}});
  const DominanceSummary summary = reduce(s);
  EXPECT_EQ(summary.reduced_rhs, (std::vector<double>{1.0, 0.0}));
  EXPECT_EQ(summary.dominant_rows, (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(summary.distinct_count, 2u);
}

TEST(Reduce, SingleScenarioDominatesEverything) {
  const ScenarioSet s = ScenarioSet::from_rows({{4.0, -1.0, 2.5}});
  const DominanceSummary summary = reduce(s);
  EXPECT_EQ(summary.reduced_rhs, (std::vector<double>{4.0, -1.0, 2.5}));
  EXPECT_EQ(summary.distinct_count, 1u);
}

TEST(Reduce, TieGoesToTheSmallestRow) {
  const ScenarioSet s = ScenarioSet::from_rows({{4, 4}, {4, 9}});
  const DominanceSummary summary = reduce(s);
  EXPECT_EQ(summary.dominant_rows, (std::vector<std::size_t>{0, 0}));
  EXPECT_EQ(summary.distinct_count, 1u);
}

TEST(Reduce, CountMinimizingTieBreak) {
  // Column 0 ties rows {0,2}, column 1 ties rows {1,2}: smallest-index picks
  // two distinct rows, the hitting-set mode needs only row 2.
  const ScenarioSet s = ScenarioSet::from_rows({{0, 7}, {5, 1}, {0, 1}});
  const DominanceSummary plain = reduce(s);
  EXPECT_EQ(plain.dominant_rows, (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(plain.distinct_count, 2u);

  const DominanceSummary merged = reduce(s, TieBreak::kMinimizeCount);
  EXPECT_EQ(merged.dominant_rows, (std::vector<std::size_t>{2, 2}));
  EXPECT_EQ(merged.distinct_count, 1u);
  EXPECT_EQ(merged.reduced_rhs, plain.reduced_rhs);
}

TEST(Reduce, CountMinimizingRespectsForcedRows) {
  // Column 1 is unique to row 1; column 0 ties {0,1}: row 1 covers both.
  const ScenarioSet s = ScenarioSet::from_rows({{0, 9}, {0, 2}});
  const DominanceSummary merged = reduce(s, TieBreak::kMinimizeCount);
  EXPECT_EQ(merged.distinct_count, 1u);
  EXPECT_EQ(merged.dominant_rows, (std::vector<std::size_t>{1, 1}));
}

TEST(Reduce, CountMinimizingTiedColumnCap) {
  // 21 tied columns exceed the exhaustive-search cap.
  std::vector<std::vector<double>> rows(2, std::vector<double>(21, 1.0));
  const ScenarioSet s = ScenarioSet::from_rows(rows);
  EXPECT_THROW(reduce(s, TieBreak::kMinimizeCount), scert::parameter_error);
  EXPECT_EQ(reduce(s).distinct_count, 1u);  // default mode is unaffected
}

TEST(Reduce, PermutationCovariance) {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 2 + rng() % 12;
    const std::size_t q = 1 + rng() % 6;
    const ScenarioSet s = random_set(rng, n, q);

    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0u);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<std::vector<double>> shuffled(n);
    for (std::size_t i = 0; i < n; ++i) {
      const auto row = s.row(perm[i]);
      shuffled[i].assign(row.begin(), row.end());
    }
    const DominanceSummary a = reduce(s);
    const DominanceSummary b = reduce(ScenarioSet::from_rows(shuffled));
    EXPECT_EQ(a.reduced_rhs, b.reduced_rhs);
    // Continuous random entries: minima are unique almost surely.
    EXPECT_EQ(a.distinct_count, b.distinct_count);
  }
}

TEST(Reduce, RemovingNonDominantRowsChangesNothing) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 3 + rng() % 10;
    const std::size_t q = 1 + rng() % 5;
    const ScenarioSet s = random_set(rng, n, q);
    const DominanceSummary summary = reduce(s);
    EXPECT_LE(summary.distinct_count, std::min(n, q));

    for (std::size_t drop = 0; drop < n; ++drop) {
      if (std::find(summary.dominant_rows.begin(), summary.dominant_rows.end(), drop) !=
          summary.dominant_rows.end()) {
        continue;
      }
      std::vector<std::vector<double>> rest;
      for (std::size_t i = 0; i < n; ++i) {
        if (i == drop) continue;
        const auto row = s.row(i);
        rest.emplace_back(row.begin(), row.end());
      }
      EXPECT_EQ(reduce(ScenarioSet::from_rows(rest)).reduced_rhs, summary.reduced_rhs);
    }
  }
}

TEST(Violates, StrictInequalityOnly) {
  const std::vector<double> row{0.5, 7.0};
  EXPECT_TRUE(violates(Decision{{1.0, 0.0}}, row));
  EXPECT_FALSE(violates(Decision{{0.5, 7.0}}, row));  // equality is feasible
  EXPECT_FALSE(violates(Decision{{0.4, -1.0}}, row));
  EXPECT_THROW(violates(Decision{{1.0}}, row), scert::data_error);
}

TEST(Violates, ReductionIsFeasibleForItsTrainingRows) {
  std::mt19937 rng(3);
  const ScenarioSet s = random_set(rng, 20, 4);
  const Decision reduction{reduce(s).reduced_rhs};
  for (std::size_t i = 0; i < s.scenario_count(); ++i) {
    EXPECT_FALSE(violates(reduction, s.row(i)));
  }
}

TEST(EmpiricalRisk, Extremes) {
  std::mt19937 rng(5);
  const ScenarioSet validation = random_set(rng, 50, 3);
  const DominanceSummary summary = reduce(validation);

  EXPECT_EQ(empirical_risk(Decision{summary.reduced_rhs}, validation), 0.0);

  std::vector<double> above(3, 0.0);
  for (std::size_t l = 0; l < 3; ++l) {
    double hi = validation.at(0, l);
    for (std::size_t i = 1; i < 50; ++i) hi = std::max(hi, validation.at(i, l));
    above[l] = hi + 1.0;
  }
  EXPECT_EQ(empirical_risk(Decision{above}, validation), 1.0);
}

TEST(DominanceCheck, HoldsForEveryFeasibleDecision) {
  std::mt19937 rng(13);
  std::uniform_real_distribution<double> slack(0.0, 2.0);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t q = 1 + rng() % 6;
    const ScenarioSet train = random_set(rng, 2 + rng() % 30, q);
    const ScenarioSet probe = random_set(rng, 2 + rng() % 60, q);
    const DominanceSummary summary = reduce(train);

    Decision d{summary.reduced_rhs};
    for (double& g : d.g) g -= slack(rng);
    EXPECT_TRUE(dominance_check(d, summary, probe));
    EXPECT_TRUE(dominance_check(Decision{summary.reduced_rhs}, summary, probe));
    EXPECT_LE(empirical_risk(d, probe), empirical_risk(Decision{summary.reduced_rhs}, probe));
  }
}

TEST(DominanceCheck, GapRowWitnessesStrictlySmallerRisk) {
  // One column; the decision sits strictly below the reduction and the probe
  // contains a row between them: only the reduction violates it.
  const ScenarioSet train = ScenarioSet::from_rows({{2.0}, {3.0}});
  const DominanceSummary summary = reduce(train);
  ASSERT_EQ(summary.reduced_rhs[0], 2.0);
  const Decision d{{1.0}};
  const ScenarioSet probe = ScenarioSet::from_rows({{1.5}, {4.0}});
  EXPECT_TRUE(dominance_check(d, summary, probe));
  EXPECT_LT(empirical_risk(d, probe), empirical_risk(Decision{summary.reduced_rhs}, probe));
}

TEST(DominanceCheck, RejectsTrainingInfeasibleDecisions) {
  const ScenarioSet train = ScenarioSet::from_rows({{2.0, 1.0}});
  const DominanceSummary summary = reduce(train);
  const ScenarioSet probe = ScenarioSet::from_rows({{5.0, 5.0}});
  EXPECT_THROW(dominance_check(Decision{{2.1, 0.0}}, summary, probe), scert::contract_error);
}

TEST(Certificates, APosterioriUsesTheDistinctRowCount) {
  const ScenarioSet s = ScenarioSet::from_rows({{1, 5}, {2, 0}, {3, 3}});
  const auto report = a_posteriori_certificate(s, 0.05);
  EXPECT_EQ(report.kind, scert::CertificateReport::Kind::kAPosteriori);
  EXPECT_EQ(report.n_scenarios, 3u);
  ASSERT_TRUE(report.complexity_used.has_value());
  EXPECT_EQ(*report.complexity_used, 2u);
  EXPECT_DOUBLE_EQ(report.epsilon, violation_level(3, 0.05, 2));
}

TEST(Certificates, SingleScenarioSingleColumnIsVacuous) {
  const ScenarioSet s = ScenarioSet::from_rows({{42.0}});
  const auto report = a_posteriori_certificate(s, 0.2);
  EXPECT_EQ(*report.complexity_used, 1u);
  EXPECT_EQ(report.epsilon, 1.0);  // complexity equals the scenario count
}

TEST(Certificates, SharedDominantRowTightensTheBound) {
  // Row 0 is the columnwise minimum everywhere, so the complexity collapses
  // to 1 and the bound beats the all-distinct case.
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> dist(5.0, 10.0);
  std::vector<std::vector<double>> rows(1000, std::vector<double>(24));
  for (auto& row : rows) {
    for (double& v : row) v = dist(rng);
  }
  rows[0].assign(24, 1.0);
  const auto report = a_posteriori_certificate(ScenarioSet::from_rows(rows), 1e-6);
  EXPECT_EQ(*report.complexity_used, 1u);
  EXPECT_LT(report.epsilon, violation_level(1000, 1e-6, 24));
}

TEST(Certificates, APrioriMatchesTheDirectComputation) {
  const auto r533 = a_priori_certificate(533, 24, 1e-6);
  EXPECT_LE(r533.epsilon, 0.1);
  EXPECT_FALSE(r533.complexity_used.has_value());

  const auto r132 = a_priori_certificate(132, 1, 1e-6);
  EXPECT_NEAR(r132.epsilon, 1.0 - std::exp(std::log(1e-6) / 132.0), 1e-9);

  const auto boundary = a_priori_certificate(5, 5, 0.5);
  EXPECT_GT(boundary.epsilon, 0.0);
  EXPECT_LT(boundary.epsilon, 1.0);

  EXPECT_THROW(a_priori_certificate(4, 5, 0.5), scert::parameter_error);
}

TEST(ScenarioCsv, HeaderDetectionAndValues) {
  std::istringstream with_header("h0,h1\n1.5,2\n-0.25,4e2\n");
  const ScenarioSet s = ScenarioSet::load_csv(with_header, "test.csv");
  EXPECT_EQ(s.scenario_count(), 2u);
  EXPECT_EQ(s.constraint_count(), 2u);
  EXPECT_DOUBLE_EQ(s.at(0, 0), 1.5);
  EXPECT_DOUBLE_EQ(s.at(1, 1), 400.0);

  std::istringstream plain("1,2\n3,4\n");
  EXPECT_EQ(ScenarioSet::load_csv(plain, "plain.csv").scenario_count(), 2u);
}

TEST(ScenarioCsv, ErrorsCarryLineNumbers) {
  std::istringstream bad("1,2\n3,oops\n");
  try {
    ScenarioSet::load_csv(bad, "bad.csv");
    FAIL() << "expected data_error";
  } catch (const scert::data_error& e) {
    EXPECT_NE(std::string(e.what()).find("bad.csv:2"), std::string::npos);
  }

  std::istringstream ragged("1,2\n3\n");
  EXPECT_THROW(ScenarioSet::load_csv(ragged, "r.csv"), scert::data_error);

  std::istringstream empty("");
  EXPECT_THROW(ScenarioSet::load_csv(empty, "e.csv"), scert::parameter_error);
}

TEST(ScenarioSet, RejectsNonFiniteEntries) {
  EXPECT_THROW(ScenarioSet(1, 2, {1.0, std::numeric_limits<double>::quiet_NaN()}),
               scert::data_error);
  EXPECT_THROW(ScenarioSet(1, 1, {}), scert::parameter_error);
}

}  // namespace
