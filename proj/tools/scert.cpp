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

// scert: risk certificates and data-set sizing for scenario programs with
// additively-uncertain constraints, demonstrated on unit commitment.
//
// Scenario rows are numbered from 1 (the first data row of a CSV) in all
// human-readable output. Stochastic commands require an explicit --seed.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "scert/certmath.hpp"
#include "scert/csv.hpp"
#include "scert/errors.hpp"
#include "scert/miqp/branch_and_bound.hpp"
#include "scert/miqp/lp_export.hpp"
#include "scert/scenario.hpp"
#include "scert/sizing.hpp"
#include "scert/support.hpp"
#include "scert/ucp/generation_unit.hpp"
#include "scert/ucp/synthetic_demand.hpp"
#include "scert/ucp/uc_model.hpp"

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw scert::data_error("cannot open '" + path + "' for writing");
  return out;
}

// ---------------------------------------------------------------- certify

struct CertifyArgs {
  std::string scenarios;
  double beta = 0.0;
  std::string tie_break = "smallest";
  std::string csv;
};

void cmd_certify(const CertifyArgs& args) {
  const scert::ScenarioSet set = scert::ScenarioSet::load_csv(args.scenarios);
  const scert::TieBreak mode = args.tie_break == "mincount" ? scert::TieBreak::kMinimizeCount
                                                            : scert::TieBreak::kSmallestIndex;
  const scert::DominanceSummary summary = scert::reduce(set, mode);
  const double eps =
      scert::violation_level(set.scenario_count(), args.beta, summary.distinct_count);

  std::printf("scenarios: %zu rows, %zu columns (%s)\n", set.scenario_count(),
              set.constraint_count(), args.scenarios.c_str());
  std::printf("complexity (distinct dominant rows): %zu\n", summary.distinct_count);
  std::printf("a-posteriori risk bound: %s  (confidence 1 - %s)\n", fmt(eps).c_str(),
              fmt(args.beta).c_str());
  std::printf("dominant row per column (1-based):");
  for (std::size_t r : summary.dominant_rows) std::printf(" %zu", r + 1);
  std::printf("\n");

  if (!args.csv.empty()) {
    auto out = open_out(args.csv);
    scert::write_csv_row(out, {"n", "q", "complexity", "beta", "epsilon"});
    scert::write_csv_row(out, {std::to_string(set.scenario_count()),
                               std::to_string(set.constraint_count()),
                               std::to_string(summary.distinct_count), fmt(args.beta), fmt(eps)});
  }
}

// ------------------------------------------------------------------- size

struct SizeArgs {
  std::size_t q = 0;
  double eps_bar = 0.0;
  double beta = 0.0;
  std::string mode = "oneshot";
  std::string csv;
};

void cmd_size(const SizeArgs& args) {
  const scert::SizingSpec spec{args.q, args.eps_bar, args.beta};
  if (args.mode == "oneshot") {
    const std::size_t n = scert::one_shot_size(spec);
    std::printf("one-shot size: %zu\n", n);
    if (!args.csv.empty()) {
      auto out = open_out(args.csv);
      scert::write_csv_row(out, {"q", "eps_bar", "beta", "n_oneshot"});
      scert::write_csv_row(out, {std::to_string(args.q), fmt(args.eps_bar), fmt(args.beta),
                                 std::to_string(n)});
    }
  } else if (args.mode == "epsbased") {
    const std::size_t one_shot = scert::one_shot_size(spec);
    const std::size_t n = scert::eps_based_size(spec);
    std::printf("violation-level based size: %zu\n", n);
    std::printf("one-shot size: %zu  (delta %zu)\n", one_shot, n - one_shot);
    if (!args.csv.empty()) {
      auto out = open_out(args.csv);
      scert::write_csv_row(out, {"q", "eps_bar", "beta", "n_epsbased", "n_oneshot", "delta"});
      scert::write_csv_row(out, {std::to_string(args.q), fmt(args.eps_bar), fmt(args.beta),
                                 std::to_string(n), std::to_string(one_shot),
                                 std::to_string(n - one_shot)});
    }
  } else if (args.mode == "incremental-schedule") {
    const scert::IncrementalSchedule sched = scert::incremental_schedule(spec);
    std::printf("%4s %8s %14s %8s\n", "j", "m_bar", "beta_j", "n_j");
    for (std::size_t j = 0; j <= args.q; ++j) {
      std::printf("%4zu %8zu %14s %8zu\n", j, sched.m_bar[j], fmt(sched.beta_j[j]).c_str(),
                  sched.n_j[j]);
    }
    if (!args.csv.empty()) {
      auto out = open_out(args.csv);
      scert::write_csv_row(out, {"j", "m_bar", "beta_j", "n_j"});
      for (std::size_t j = 0; j <= args.q; ++j) {
        scert::write_csv_row(out, {std::to_string(j), std::to_string(sched.m_bar[j]),
                                   fmt(sched.beta_j[j]), std::to_string(sched.n_j[j])});
      }
    }
  } else {
    throw scert::parameter_error("unknown --mode '" + args.mode + "'");
  }
}

// ------------------------------------------------------------ run-incremental

struct RunIncArgs {
  std::string units;
  std::string demand_csv;
  bool synth = false;
  long long seed = 0;
  double eps_bar = 0.0;
  double beta = 0.0;
  std::string solver = "bb";
  std::string export_path;
  std::size_t runs = 1;
  std::string csv;
  double gap_tol = 1e-7;
  std::size_t node_limit = 100000;
  std::size_t binary_cap = 60;
  scert::ucp::SynthDemandParams synth_params;
};

void cmd_run_incremental(const RunIncArgs& args) {
  const scert::ucp::UcInstance inst = scert::ucp::load_units_file(args.units);
  const std::size_t q = static_cast<std::size_t>(inst.horizon);
  const scert::SizingSpec spec{q, args.eps_bar, args.beta};

  scert::ReducedSolver solver;
  if (!args.export_path.empty()) {
    const std::string path = args.export_path;
    solver = [&inst, path](const std::vector<double>& rhs) {
      scert::miqp::export_lp_file(scert::ucp::build_miqp(inst, rhs), path,
                                  "reduced unit-commitment model");
      return scert::ucp::make_reduction_solver()(rhs);
    };
  } else if (args.solver == "bb") {
    scert::ucp::UcSolverOptions opt;
    opt.gap_tol = args.gap_tol;
    opt.node_limit = args.node_limit;
    opt.binary_cap = args.binary_cap;
    solver = scert::ucp::make_reduced_solver(inst, opt);
  } else if (args.solver == "reduction") {
    solver = scert::ucp::make_reduction_solver();
  } else {
    throw scert::parameter_error("unknown --solver '" + args.solver + "'");
  }

  // With --demand-csv the file rows are consumed across runs, so every run
  // sees fresh data; with --synth run k draws from seed+k-1.
  std::unique_ptr<scert::ucp::DemandTableSource> csv_src;
  if (!args.synth) {
    csv_src = std::make_unique<scert::ucp::DemandTableSource>(
        scert::ucp::DemandData::load_csv(args.demand_csv));
  }

  std::ofstream csv_out;
  if (!args.csv.empty()) {
    csv_out = open_out(args.csv);
    scert::write_csv_row(csv_out, {"run", "seed", "j_stop", "n_used", "objective"});
  }

  for (std::size_t r = 0; r < args.runs; ++r) {
    std::unique_ptr<scert::ucp::SyntheticDemandSource> synth_src;
    if (args.synth) {
      synth_src = std::make_unique<scert::ucp::SyntheticDemandSource>(
          static_cast<std::uint64_t>(args.seed) + r, inst.horizon, args.synth_params);
    }
    scert::ScenarioSource& source =
        args.synth ? static_cast<scert::ScenarioSource&>(*synth_src)
                   : static_cast<scert::ScenarioSource&>(*csv_src);
    const scert::IncrementalRun run = scert::run_incremental(spec, source, solver);

    if (args.runs > 1) std::printf("run %zu:\n", r + 1);
    for (std::size_t j = 0; j < run.complexity_trace.size(); ++j) {
      std::printf("  stage %zu: complexity %zu\n", j, run.complexity_trace[j]);
    }
    std::printf("stopped at stage %zu: n_used=%zu objective=%s\n", run.j_stop, run.n_used,
                fmt(run.objective).c_str());
    if (!args.export_path.empty()) {
      std::printf("reduced model exported to %s (no solve attempted)\n",
                  args.export_path.c_str());
    }
    if (csv_out.is_open()) {
      const long long seed = args.synth ? args.seed + static_cast<long long>(r) : 0;
      scert::write_csv_row(csv_out,
                           {std::to_string(r + 1), std::to_string(seed),
                            std::to_string(run.j_stop), std::to_string(run.n_used),
                            fmt(run.objective)});
    }
  }
}

// ------------------------------------------------------------------- risk

struct RiskArgs {
  std::string decision;
  std::string validation;
  std::string training;
  std::string csv;
};

void cmd_risk(const RiskArgs& args) {
  const scert::CsvTable decision_table = scert::read_numeric_csv_file(args.decision);
  if (decision_table.rows.size() != 1) {
    throw scert::data_error(args.decision + ": expected exactly one decision row, got " +
                            std::to_string(decision_table.rows.size()));
  }
  const scert::Decision decision{decision_table.rows.front()};
  const scert::ScenarioSet validation = scert::ScenarioSet::load_csv(args.validation);

  const double risk = scert::empirical_risk(decision, validation);
  std::printf("decision risk: %s  (%zu validation rows)\n", fmt(risk).c_str(),
              validation.scenario_count());

  double reduction_risk = -1.0;
  std::size_t verified = 0;
  if (!args.training.empty()) {
    const scert::ScenarioSet training = scert::ScenarioSet::load_csv(args.training);
    const scert::DominanceSummary summary = scert::reduce(training);
    reduction_risk = scert::empirical_risk(scert::Decision{summary.reduced_rhs}, validation);
    if (!scert::dominance_check(decision, summary, validation)) {
      throw scert::solver_error("dominance check failed: a validation row is violated by the "
                                "decision but not by the reduction");
    }
    verified = validation.scenario_count();
    std::printf("reduction risk: %s\n", fmt(reduction_risk).c_str());
    std::printf("dominance check: decision violations are covered by the reduction on all "
                "%zu rows\n", verified);
  }

  if (!args.csv.empty()) {
    auto out = open_out(args.csv);
    scert::write_csv_row(out, {"decision_risk", "reduction_risk", "rows_verified"});
    scert::write_csv_row(out, {fmt(risk), reduction_risk < 0 ? "" : fmt(reduction_risk),
                               std::to_string(verified)});
  }
}

// ---------------------------------------------------------------- support

struct SupportArgs {
  std::string units;
  std::string demand_csv;
  std::string mode = "uc";
  double beta = 1e-6;
  double equality_tol = 1e-6;
  double gap_tol = 1e-7;
  std::size_t node_limit = 100000;
  std::size_t binary_cap = 60;
  std::string csv;
};

void cmd_support(const SupportArgs& args) {
  const scert::ucp::DemandData demand = scert::ucp::DemandData::load_csv(args.demand_csv);
  const scert::ScenarioSet set = scert::ucp::to_additive(demand);
  const std::size_t n = set.scenario_count();
  const scert::DominanceSummary summary = scert::reduce(set);

  scert::SolveOracle oracle;
  if (args.mode == "uc") {
    const scert::ucp::UcInstance inst = scert::ucp::load_units_file(args.units);
    if (static_cast<std::size_t>(inst.horizon) != set.constraint_count()) {
      throw scert::data_error("demand columns do not match the instance horizon");
    }
    scert::ucp::UcSolverOptions opt;
    opt.gap_tol = args.gap_tol;
    opt.node_limit = args.node_limit;
    opt.binary_cap = args.binary_cap;
    {
      // Fail fast with the documented cap instead of deep in the greedy loop.
      const auto probe = scert::ucp::build_miqp(inst, summary.reduced_rhs);
      if (probe.binary_count() > opt.binary_cap) {
        throw scert::solver_error(
            "instance has " + std::to_string(probe.binary_count()) +
            " binaries, above the internal cap of " + std::to_string(opt.binary_cap) +
            "; export the model (run-incremental --export) and use an external solver");
      }
    }
    oracle = [&set, inst, opt](const std::vector<std::size_t>& rows) {
      std::vector<std::vector<double>> sub;
      sub.reserve(rows.size());
      for (std::size_t r : rows) {
        const auto row = set.row(r);
        sub.emplace_back(row.begin(), row.end());
      }
      const auto sub_summary = scert::reduce(scert::ScenarioSet::from_rows(sub));
      const auto sol = scert::ucp::solve_uc(inst, sub_summary.reduced_rhs, opt);
      scert::SolutionRecord rec;
      for (const auto& unit_power : sol.power) {
        rec.continuous.insert(rec.continuous.end(), unit_power.begin(), unit_power.end());
      }
      for (std::size_t j = 0; j < sol.zone_on.size(); ++j) {
        for (const auto& zone : sol.zone_on[j]) {
          rec.binaries.insert(rec.binaries.end(), zone.begin(), zone.end());
        }
      }
      for (const auto& u : sol.startup) rec.binaries.insert(rec.binaries.end(), u.begin(), u.end());
      for (const auto& d : sol.shutdown) {
        rec.binaries.insert(rec.binaries.end(), d.begin(), d.end());
      }
      rec.objective = sol.objective;
      return rec;
    };
  } else if (args.mode == "reduction") {
    oracle = [&set](const std::vector<std::size_t>& rows) {
      scert::SolutionRecord rec;
      rec.continuous.assign(set.constraint_count(), 0.0);
      for (std::size_t l = 0; l < set.constraint_count(); ++l) {
        double best = set.at(rows.front(), l);
        for (std::size_t r : rows) best = std::min(best, set.at(r, l));
        rec.continuous[l] = best;
        rec.objective += best;
      }
      return rec;
    };
  } else {
    throw scert::parameter_error("unknown --mode '" + args.mode + "'");
  }

  const scert::SupportResult res = scert::greedy_support(n, oracle, args.equality_tol);
  const double eps_greedy = scert::violation_level(n, args.beta, res.s_star);
  const double eps_sigma = scert::violation_level(n, args.beta, summary.distinct_count);

  std::printf("scenarios: %zu rows, %zu columns\n", n, set.constraint_count());
  std::printf("greedy support size: %zu  (solve count %zu)\n", res.s_star, res.solve_count);
  std::printf("dominant-row complexity: %zu  (gap %ld)\n", summary.distinct_count,
              scert::complexity_gap(res.s_star, summary.distinct_count));
  std::printf("a-posteriori bound via support size: %s\n", fmt(eps_greedy).c_str());
  std::printf("a-posteriori bound via complexity:   %s\n", fmt(eps_sigma).c_str());
  std::printf("kept rows (1-based):");
  for (std::size_t r : res.kept_rows) std::printf(" %zu", r + 1);
  std::printf("\n");

  if (!args.csv.empty()) {
    auto out = open_out(args.csv);
    scert::write_csv_row(out, {"n", "q", "s_star", "sigma", "gap", "solve_count", "beta",
                               "eps_support", "eps_complexity"});
    scert::write_csv_row(out,
                         {std::to_string(n), std::to_string(set.constraint_count()),
                          std::to_string(res.s_star), std::to_string(summary.distinct_count),
                          std::to_string(scert::complexity_gap(res.s_star,
                                                               summary.distinct_count)),
                          std::to_string(res.solve_count), fmt(args.beta), fmt(eps_greedy),
                          fmt(eps_sigma)});
  }
}

// ------------------------------------------------------------- gen-demand

struct GenDemandArgs {
  long long seed = 0;
  std::size_t days = 0;
  int hours = 24;
  std::string out;
  scert::ucp::SynthDemandParams params;
};

void cmd_gen_demand(const GenDemandArgs& args) {
  auto out = open_out(args.out);
  std::vector<std::string> header;
  for (int t = 0; t < args.hours; ++t) header.push_back("h" + std::to_string(t));
  scert::write_csv_row(out, header);

  if (args.days == 0) {
    std::printf("wrote header-only file %s (0 days)\n", args.out.c_str());
    return;
  }
  const scert::ucp::DemandData demand = scert::ucp::synth_demand(
      static_cast<std::uint64_t>(args.seed), args.days, args.hours, args.params);
  for (std::size_t i = 0; i < demand.days(); ++i) {
    std::vector<std::string> row;
    for (int t = 0; t < args.hours; ++t) row.push_back(fmt(demand.at(i, t)));
    scert::write_csv_row(out, row);
  }

  std::printf("wrote %zu days x %d hours to %s (GW)\n", demand.days(), args.hours,
              args.out.c_str());
  std::printf("%4s %10s %10s %10s\n", "hour", "min", "mean", "max");
  for (int t = 0; t < args.hours; ++t) {
    double lo = demand.at(0, t), hi = demand.at(0, t), mean = 0.0;
    for (std::size_t i = 0; i < demand.days(); ++i) {
      lo = std::min(lo, demand.at(i, t));
      hi = std::max(hi, demand.at(i, t));
      mean += demand.at(i, t);
    }
    mean /= static_cast<double>(demand.days());
    std::printf("%4d %10.3f %10.3f %10.3f\n", t, lo, mean, hi);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"risk certificates and data-set sizing for additively-uncertain scenario "
               "programs, with a unit-commitment workbench"};
  app.require_subcommand(1);

  CertifyArgs certify;
  auto* c = app.add_subcommand("certify", "a-posteriori certificate for a scenario CSV");
  c->add_option("--scenarios", certify.scenarios, "scenario CSV: one row per scenario")
      ->required();
  c->add_option("--beta", certify.beta, "confidence parameter in (0,1)")->required();
  c->add_option("--tie-break", certify.tie_break,
                "tie handling: smallest (default) or mincount (exact, <= 20 tied columns)");
  c->add_option("--csv", certify.csv, "write a machine-readable report to this path");

  SizeArgs size;
  auto* s = app.add_subcommand("size", "data-set sizing for a target risk level");
  s->add_option("--q", size.q, "constraint components")->required();
  s->add_option("--eps-bar", size.eps_bar, "target risk bound in (0,1)")->required();
  s->add_option("--beta", size.beta, "confidence parameter in (0,1)")->required();
  s->add_option("--mode", size.mode, "oneshot (default), epsbased, or incremental-schedule");
  s->add_option("--csv", size.csv, "write the table to this path");

  RunIncArgs run;
  auto* r = app.add_subcommand("run-incremental",
                               "staged data collection with the reduced unit-commitment solve");
  r->add_option("--units", run.units, "unit file (INI, see README)")->required();
  r->add_option("--demand-csv", run.demand_csv, "demand CSV: one row per day, GW");
  r->add_flag("--synth", run.synth, "draw demand from the synthetic generator instead");
  r->add_option("--seed", run.seed, "generator seed (required with --synth; run k uses seed+k-1)");
  r->add_option("--eps-bar", run.eps_bar, "target risk bound in (0,1)")->required();
  r->add_option("--beta", run.beta, "confidence parameter in (0,1)")->required();
  r->add_option("--solver", run.solver, "bb (default) or reduction");
  r->add_option("--export", run.export_path, "write the reduced model to this .lp, skip solving");
  r->add_option("--runs", run.runs, "number of seeded runs (default 1)");
  r->add_option("--csv", run.csv, "write one row per run to this path");
  r->add_option("--gap-tol", run.gap_tol, "absolute bound gap for the solver (default 1e-7)");
  r->add_option("--node-limit", run.node_limit, "node budget (default 100000)");
  r->add_option("--binary-cap", run.binary_cap, "internal-solver binary cap (default 60)");
  r->add_option("--base", run.synth_params.base, "synthetic base load, GW (default 26)");
  r->add_option("--daily-amp", run.synth_params.daily_amp,
                "synthetic double-peak amplitude, GW (default 7)");
  r->add_option("--noise-sd", run.synth_params.noise_sd,
                "synthetic noise standard deviation, GW (default 1.2)");
  r->add_option("--seasonal-amp", run.synth_params.seasonal_amp,
                "synthetic seasonal offset scale, GW (default 2)");

  RiskArgs risk;
  auto* k = app.add_subcommand("risk", "empirical risk of a decision on validation data");
  k->add_option("--decision", risk.decision, "CSV with one row: the decision's constraint image")
      ->required();
  k->add_option("--validation", risk.validation, "validation scenario CSV")->required();
  k->add_option("--training", risk.training,
                "training scenario CSV; adds the reduction's risk and the dominance check");
  k->add_option("--csv", risk.csv, "write a machine-readable report to this path");

  SupportArgs support;
  auto* u = app.add_subcommand("support", "greedy support list vs dominant-row complexity");
  u->add_option("--units", support.units, "unit file (required in uc mode)");
  u->add_option("--demand-csv", support.demand_csv, "demand CSV: one row per day, GW")
      ->required();
  u->add_option("--mode", support.mode, "uc (default: full solves) or reduction");
  u->add_option("--beta", support.beta, "confidence for the reported bounds (default 1e-6)");
  u->add_option("--equality-tol", support.equality_tol,
                "max-norm tolerance for continuous solution equality (default 1e-6)");
  u->add_option("--gap-tol", support.gap_tol, "absolute bound gap for the solver (default 1e-7)");
  u->add_option("--node-limit", support.node_limit, "node budget (default 100000)");
  u->add_option("--binary-cap", support.binary_cap, "internal-solver binary cap (default 60)");
  u->add_option("--csv", support.csv, "write a machine-readable report to this path");

  GenDemandArgs gen;
  auto* g = app.add_subcommand("gen-demand", "write synthetic demand profiles to CSV");
  g->add_option("--seed", gen.seed, "generator seed")->required();
  g->add_option("--days", gen.days, "number of day rows (0 writes a header-only file)")
      ->required();
  g->add_option("--hours", gen.hours, "time slots per day (default 24)");
  g->add_option("--out", gen.out, "output CSV path")->required();
  g->add_option("--base", gen.params.base, "base load, GW (default 26)");
  g->add_option("--daily-amp", gen.params.daily_amp, "double-peak amplitude, GW (default 7)");
  g->add_option("--noise-sd", gen.params.noise_sd, "noise standard deviation, GW (default 1.2)");
  g->add_option("--seasonal-amp", gen.params.seasonal_amp,
                "seasonal offset scale, GW (default 2)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (c->parsed()) {
      cmd_certify(certify);
    } else if (s->parsed()) {
      cmd_size(size);
    } else if (r->parsed()) {
      if (!run.synth && run.demand_csv.empty()) {
        throw scert::parameter_error("provide either --demand-csv or --synth");
      }
      if (run.synth && r->count("--seed") == 0) {
        throw scert::parameter_error("--seed is required with --synth (no wall-clock default)");
      }
      cmd_run_incremental(run);
    } else if (k->parsed()) {
      cmd_risk(risk);
    } else if (u->parsed()) {
      if (support.mode == "uc" && support.units.empty()) {
        throw scert::parameter_error("--units is required in uc mode");
      }
      cmd_support(support);
    } else if (g->parsed()) {
      cmd_gen_demand(gen);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
