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

#ifndef SCERT_UCP_UC_MODEL_HPP_
#define SCERT_UCP_UC_MODEL_HPP_

#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "scert/errors.hpp"
#include "scert/miqp/branch_and_bound.hpp"
#include "scert/miqp/model.hpp"
#include "scert/scenario.hpp"
#include "scert/sizing.hpp"
#include "scert/ucp/generation_unit.hpp"

// Unit commitment as an additively-uncertain scenario program.
//
// Sign convention, on which every downstream certificate relies: the demand
// constraint  sum_j P[j,t] >= demand[t]  is carried as  g_t(x) <= b_t  with
//
//   g_t(x) = -sum_j P[j,t]      and      b_t(scenario) = -demand[t].
//
// Scenario sets built from demand therefore hold negated profiles, the
// reduced right-hand side rhs[t] equals minus the highest hour-t demand, and
// the dominant scenario of hour t is the day with the highest load then.
//
// Constraint-family tags used by the builder and the checker:
//   15b demand balance        15c ramp limits         15d zone power bounds
//   15e/15f single-zone commitment                    15g/15h startup logic
//   15i minimum up-time       15j/15k shutdown logic  15l minimum down-time
// Time indices wrap modulo the horizon so one-day schedules repeat cleanly.

namespace scert::ucp {

/// N days of demand, one row per day, horizon columns, GW.
class DemandData {
 public:
  DemandData(std::size_t days, std::size_t hours, std::vector<double> values)
      : days_(days), hours_(hours), values_(std::move(values)) {
    if (days_ == 0 || hours_ == 0) throw parameter_error("DemandData: empty shape");
    if (values_.size() != days_ * hours_) throw parameter_error("DemandData: shape mismatch");
    for (double v : values_) {
      if (!std::isfinite(v) || v < 0.0) {
        throw data_error("DemandData: demand values must be finite and >= 0");
      }
    }
  }

  static DemandData load_csv(const std::string& path) {
    const CsvTable table = read_numeric_csv_file(path);
    if (table.rows.empty()) throw data_error(path + ": no demand rows");
    std::vector<double> flat;
    flat.reserve(table.rows.size() * table.rows.front().size());
    for (const auto& r : table.rows) flat.insert(flat.end(), r.begin(), r.end());
    return DemandData(table.rows.size(), table.rows.front().size(), std::move(flat));
  }

  std::size_t days() const { return days_; }
  std::size_t hours() const { return hours_; }
  double at(std::size_t day, std::size_t hour) const { return values_[day * hours_ + hour]; }
  const std::vector<double>& values() const { return values_; }

 private:
  std::size_t days_;
  std::size_t hours_;
  std::vector<double> values_;
};

/// Demand -> scenario rows under the sign convention above (negation).
inline ScenarioSet to_additive(const DemandData& demand) {
  std::vector<double> b(demand.values().size());
  for (std::size_t i = 0; i < b.size(); ++i) b[i] = -demand.values()[i];
  return ScenarioSet(demand.days(), demand.hours(), std::move(b));
}

namespace detail {

inline int wrap(int t, int horizon) { return ((t % horizon) + horizon) % horizon; }

// Variable layout of the compiled model: P block, then y, then u, then d.
struct UcLayout {
  int n_units = 0;
  int horizon = 0;
  std::vector<std::size_t> y_offset;  // per unit
  std::size_t u_offset = 0;
  std::size_t d_offset = 0;

  explicit UcLayout(const UcInstance& inst)
      : n_units(static_cast<int>(inst.units.size())), horizon(inst.horizon) {
    std::size_t offset = static_cast<std::size_t>(n_units) * horizon;
    for (const auto& unit : inst.units) {
      y_offset.push_back(offset);
      offset += unit.zones.size() * static_cast<std::size_t>(horizon);
    }
    u_offset = offset;
    d_offset = offset + static_cast<std::size_t>(n_units) * horizon;
  }

  std::size_t p(int j, int t) const { return static_cast<std::size_t>(j) * horizon + t; }
  std::size_t y(int j, int z, int t) const {
    return y_offset[j] + static_cast<std::size_t>(z) * horizon + t;
  }
  std::size_t u(int j, int t) const { return u_offset + static_cast<std::size_t>(j) * horizon + t; }
  std::size_t d(int j, int t) const { return d_offset + static_cast<std::size_t>(j) * horizon + t; }
};

}  // namespace detail

/// Compiles the instance against a reduced right-hand side (b-units, length
/// horizon) into a mixed-binary QP. Throws model_error when a minimum up- or
/// down-time exceeds the horizon, since the wraparound would self-conflict.
inline miqp::MiqpModel build_miqp(const UcInstance& inst, const std::vector<double>& reduced_rhs) {
  inst.validate();
  const int T = inst.horizon;
  const int np = static_cast<int>(inst.units.size());
  if (reduced_rhs.size() != static_cast<std::size_t>(T)) {
    throw parameter_error("build_miqp: reduced_rhs must have one entry per time slot");
  }
  for (int j = 0; j < np; ++j) {
    if (inst.units[j].min_up > T || inst.units[j].min_down > T) {
      throw model_error("build_miqp: unit " + std::to_string(j + 1) +
                        ": min_up/min_down exceeds the horizon");
    }
  }

  miqp::MiqpModel m;
  const detail::UcLayout layout(inst);

  for (int j = 0; j < np; ++j) {
    const GenUnit& unit = inst.units[j];
    for (int t = 0; t < T; ++t) {
      // Power is non-negative by domain; the zone rows force it to zero when
      // the unit is off, which makes the lower bound redundant but explicit.
      m.add_continuous("P_" + std::to_string(j + 1) + "_" + std::to_string(t), 0.0,
                       unit.max_power(), unit.cost_quad, unit.cost_lin);
    }
  }
  for (int j = 0; j < np; ++j) {
    const GenUnit& unit = inst.units[j];
    for (std::size_t z = 0; z < unit.zones.size(); ++z) {
      for (int t = 0; t < T; ++t) {
        // Commitment cost lands on the zone indicators, whose sum is the
        // unit's on/off status.
        m.add_binary("y_" + std::to_string(j + 1) + "_" + std::to_string(z + 1) + "_" +
                         std::to_string(t),
                     unit.cost_commit);
      }
    }
  }
  for (int j = 0; j < np; ++j) {
    for (int t = 0; t < T; ++t) {
      m.add_binary("u_" + std::to_string(j + 1) + "_" + std::to_string(t),
                   inst.units[j].startup_cost);
    }
  }
  for (int j = 0; j < np; ++j) {
    for (int t = 0; t < T; ++t) {
      m.add_binary("d_" + std::to_string(j + 1) + "_" + std::to_string(t),
                   inst.units[j].shutdown_cost);
    }
  }

  const auto jt = [](const char* fam, int j, int t) {
    return std::string(fam) + "_j" + std::to_string(j + 1) + "_t" + std::to_string(t);
  };

  for (int t = 0; t < T; ++t) {
    miqp::LinearRow row;
    for (int j = 0; j < np; ++j) row.terms.emplace_back(layout.p(j, t), 1.0);
    row.relation = miqp::Relation::kGe;
    row.rhs = -reduced_rhs[t];
    row.tag = "c15b_t" + std::to_string(t);
    m.add_row(std::move(row));
  }

  for (int j = 0; j < np; ++j) {
    const GenUnit& unit = inst.units[j];
    const int nz = static_cast<int>(unit.zones.size());
    for (int t = 0; t < T; ++t) {
      const int tm1 = detail::wrap(t - 1, T);

      {
        miqp::LinearRow up{{{layout.p(j, t), 1.0}, {layout.p(j, tm1), -1.0}},
                           miqp::Relation::kLe, unit.ramp_up, jt("c15c_up", j, t)};
        m.add_row(std::move(up));
        miqp::LinearRow dn{{{layout.p(j, tm1), 1.0}, {layout.p(j, t), -1.0}},
                           miqp::Relation::kLe, unit.ramp_down, jt("c15c_dn", j, t)};
        m.add_row(std::move(dn));
      }

      {
        miqp::LinearRow lo, hi;
        lo.terms.emplace_back(layout.p(j, t), -1.0);
        hi.terms.emplace_back(layout.p(j, t), 1.0);
        for (int z = 0; z < nz; ++z) {
          lo.terms.emplace_back(layout.y(j, z, t), unit.zones[z].p_min);
          hi.terms.emplace_back(layout.y(j, z, t), -unit.zones[z].p_max);
        }
        lo.relation = hi.relation = miqp::Relation::kLe;
        lo.rhs = hi.rhs = 0.0;
        lo.tag = jt("c15d_lo", j, t);
        hi.tag = jt("c15d_hi", j, t);
        m.add_row(std::move(lo));
        m.add_row(std::move(hi));
      }

      {
        miqp::LinearRow one;
        for (int z = 0; z < nz; ++z) one.terms.emplace_back(layout.y(j, z, t), 1.0);
        one.relation = miqp::Relation::kLe;
        one.rhs = 1.0;
        one.tag = jt("c15f", j, t);
        m.add_row(std::move(one));
      }

      {
        miqp::LinearRow lhs;  // Y_t - Y_{t-1} <= u_t
        for (int z = 0; z < nz; ++z) {
          lhs.terms.emplace_back(layout.y(j, z, t), 1.0);
          lhs.terms.emplace_back(layout.y(j, z, tm1), -1.0);
        }
        lhs.terms.emplace_back(layout.u(j, t), -1.0);
        lhs.relation = miqp::Relation::kLe;
        lhs.rhs = 0.0;
        lhs.tag = jt("c15g_lo", j, t);
        m.add_row(std::move(lhs));

        miqp::LinearRow rhs;  // u_t <= Y_t
        rhs.terms.emplace_back(layout.u(j, t), 1.0);
        for (int z = 0; z < nz; ++z) rhs.terms.emplace_back(layout.y(j, z, t), -1.0);
        rhs.relation = miqp::Relation::kLe;
        rhs.rhs = 0.0;
        rhs.tag = jt("c15g_hi", j, t);
        m.add_row(std::move(rhs));

        miqp::LinearRow off;  // u_t <= 1 - Y_{t-1}
        off.terms.emplace_back(layout.u(j, t), 1.0);
        for (int z = 0; z < nz; ++z) off.terms.emplace_back(layout.y(j, z, tm1), 1.0);
        off.relation = miqp::Relation::kLe;
        off.rhs = 1.0;
        off.tag = jt("c15h", j, t);
        m.add_row(std::move(off));
      }

      for (int tau = t; tau < t + unit.min_up; ++tau) {
        miqp::LinearRow row;  // u_t <= Y_{tau mod T}
        row.terms.emplace_back(layout.u(j, t), 1.0);
        for (int z = 0; z < nz; ++z) {
          row.terms.emplace_back(layout.y(j, z, detail::wrap(tau, T)), -1.0);
        }
        row.relation = miqp::Relation::kLe;
        row.rhs = 0.0;
        row.tag = jt("c15i", j, t) + "_tau" + std::to_string(tau - t);
        m.add_row(std::move(row));
      }

      {
        miqp::LinearRow lhs;  // Y_{t-1} - Y_t <= d_t
        for (int z = 0; z < nz; ++z) {
          lhs.terms.emplace_back(layout.y(j, z, tm1), 1.0);
          lhs.terms.emplace_back(layout.y(j, z, t), -1.0);
        }
        lhs.terms.emplace_back(layout.d(j, t), -1.0);
        lhs.relation = miqp::Relation::kLe;
        lhs.rhs = 0.0;
        lhs.tag = jt("c15j_lo", j, t);
        m.add_row(std::move(lhs));

        miqp::LinearRow rhs;  // d_t <= Y_{t-1}
        rhs.terms.emplace_back(layout.d(j, t), 1.0);
        for (int z = 0; z < nz; ++z) rhs.terms.emplace_back(layout.y(j, z, tm1), -1.0);
        rhs.relation = miqp::Relation::kLe;
        rhs.rhs = 0.0;
        rhs.tag = jt("c15j_hi", j, t);
        m.add_row(std::move(rhs));

        miqp::LinearRow on;  // d_t <= 1 - Y_t
        on.terms.emplace_back(layout.d(j, t), 1.0);
        for (int z = 0; z < nz; ++z) on.terms.emplace_back(layout.y(j, z, t), 1.0);
        on.relation = miqp::Relation::kLe;
        on.rhs = 1.0;
        on.tag = jt("c15k", j, t);
        m.add_row(std::move(on));
      }

      for (int tau = t; tau < t + unit.min_down; ++tau) {
        miqp::LinearRow row;  // Y_{tau mod T} <= 1 - d_t
        row.terms.emplace_back(layout.d(j, t), 1.0);
        for (int z = 0; z < nz; ++z) {
          row.terms.emplace_back(layout.y(j, z, detail::wrap(tau, T)), 1.0);
        }
        row.relation = miqp::Relation::kLe;
        row.rhs = 1.0;
        row.tag = jt("c15l", j, t) + "_tau" + std::to_string(tau - t);
        m.add_row(std::move(row));
      }
    }
  }
  return m;
}

/// Structured view of a solved schedule.
struct UcSolution {
  std::vector<std::vector<double>> power;             // [unit][t], GW
  std::vector<std::vector<std::vector<int>>> zone_on; // [unit][zone][t]
  std::vector<std::vector<int>> startup;              // [unit][t]
  std::vector<std::vector<int>> shutdown;             // [unit][t]
  double objective = 0.0;

  int status(std::size_t j, int t) const {  // on/off state as the zone sum
    int y_sum = 0;
    for (const auto& zone : zone_on[j]) y_sum += zone[t];
    return y_sum;
  }
};

/// Maps a flat solver assignment back onto the unit/zone/time structure.
inline UcSolution unpack_solution(const UcInstance& inst, const std::vector<double>& assignment,
                                  double objective) {
  const detail::UcLayout layout(inst);
  const int T = inst.horizon;
  const int np = static_cast<int>(inst.units.size());
  if (assignment.size() != layout.d_offset + static_cast<std::size_t>(np) * T) {
    throw parameter_error("unpack_solution: assignment length does not match the instance");
  }
  UcSolution sol;
  sol.objective = objective;
  sol.power.assign(np, std::vector<double>(T, 0.0));
  sol.startup.assign(np, std::vector<int>(T, 0));
  sol.shutdown.assign(np, std::vector<int>(T, 0));
  sol.zone_on.resize(np);
  for (int j = 0; j < np; ++j) {
    sol.zone_on[j].assign(inst.units[j].zones.size(), std::vector<int>(T, 0));
    for (int t = 0; t < T; ++t) {
      sol.power[j][t] = assignment[layout.p(j, t)];
      sol.startup[j][t] = static_cast<int>(std::lround(assignment[layout.u(j, t)]));
      sol.shutdown[j][t] = static_cast<int>(std::lround(assignment[layout.d(j, t)]));
      for (std::size_t z = 0; z < inst.units[j].zones.size(); ++z) {
        sol.zone_on[j][z][t] =
            static_cast<int>(std::lround(assignment[layout.y(j, static_cast<int>(z), t)]));
      }
    }
  }
  return sol;
}

/// Verifies every constraint family directly from its definition (not via
/// the compiled rows). Returns violation identifiers such as "15c j=2 t=5";
/// an empty list means feasible within 1e-7 on the continuous comparisons,
/// exact on the binary logic.
inline std::vector<std::string> check_feasible(const UcInstance& inst, const UcSolution& sol,
                                               const std::vector<double>& reduced_rhs) {
  constexpr double kTol = 1e-7;
  const int T = inst.horizon;
  const int np = static_cast<int>(inst.units.size());
  if (reduced_rhs.size() != static_cast<std::size_t>(T)) {
    throw parameter_error("check_feasible: reduced_rhs must have one entry per time slot");
  }
  std::vector<std::string> bad;
  const auto jt = [](const char* fam, int j, int t) {
    return std::string(fam) + " j=" + std::to_string(j + 1) + " t=" + std::to_string(t);
  };

  for (int t = 0; t < T; ++t) {
    double total = 0.0;
    for (int j = 0; j < np; ++j) total += sol.power[j][t];
    if (total < -reduced_rhs[t] - kTol) bad.push_back("15b t=" + std::to_string(t));
  }

  for (int j = 0; j < np; ++j) {
    const GenUnit& unit = inst.units[j];
    const int nz = static_cast<int>(unit.zones.size());
    for (int t = 0; t < T; ++t) {
      const int tm1 = detail::wrap(t - 1, T);
      const int y_t = sol.status(j, t);
      const int y_tm1 = sol.status(j, tm1);
      const int u_t = sol.startup[j][t];
      const int d_t = sol.shutdown[j][t];

      for (int z = 0; z < nz; ++z) {
        const int y = sol.zone_on[j][z][t];
        if (y != 0 && y != 1) bad.push_back(jt("domain y", j, t));
      }
      if (u_t != 0 && u_t != 1) bad.push_back(jt("domain u", j, t));
      if (d_t != 0 && d_t != 1) bad.push_back(jt("domain d", j, t));

      const double delta = sol.power[j][t] - sol.power[j][tm1];
      if (delta > unit.ramp_up + kTol || -delta > unit.ramp_down + kTol) {
        bad.push_back(jt("15c", j, t));
      }

      double zone_lo = 0.0, zone_hi = 0.0;
      for (int z = 0; z < nz; ++z) {
        zone_lo += unit.zones[z].p_min * sol.zone_on[j][z][t];
        zone_hi += unit.zones[z].p_max * sol.zone_on[j][z][t];
      }
      if (sol.power[j][t] < zone_lo - kTol || sol.power[j][t] > zone_hi + kTol) {
        bad.push_back(jt("15d", j, t));
      }

      if (y_t > 1) bad.push_back(jt("15f", j, t));

      if (y_t - y_tm1 > u_t || u_t > y_t) bad.push_back(jt("15g", j, t));
      if (u_t > 1 - y_tm1) bad.push_back(jt("15h", j, t));
      for (int tau = t; tau < t + unit.min_up; ++tau) {
        if (sol.status(j, detail::wrap(tau, T)) < u_t) {
          bad.push_back(jt("15i", j, t));
          break;
        }
      }

      if (y_tm1 - y_t > d_t || d_t > y_tm1) bad.push_back(jt("15j", j, t));
      if (d_t > 1 - y_t) bad.push_back(jt("15k", j, t));
      for (int tau = t; tau < t + unit.min_down; ++tau) {
        if (sol.status(j, detail::wrap(tau, T)) > 1 - d_t) {
          bad.push_back(jt("15l", j, t));
          break;
        }
      }
    }
  }
  return bad;
}

/// Constraint image of a schedule under the sign convention: g[t] is minus
/// the total generation at hour t.
inline Decision decision_image(const UcSolution& sol) {
  if (sol.power.empty()) throw parameter_error("decision_image: empty solution");
  const std::size_t T = sol.power.front().size();
  Decision d;
  d.g.assign(T, 0.0);
  for (const auto& unit_power : sol.power) {
    for (std::size_t t = 0; t < T; ++t) d.g[t] -= unit_power[t];
  }
  return d;
}

struct UcSolverOptions {
  double gap_tol = 1e-7;
  std::size_t node_limit = 100000;
  std::size_t binary_cap = 60;  // documented internal-solver operating range
};

/// Full solve against a reduced right-hand side. Throws solver_error when
/// the instance exceeds the internal binary cap (export the model instead)
/// and data_error on infeasibility.
inline UcSolution solve_uc(const UcInstance& inst, const std::vector<double>& reduced_rhs,
                           const UcSolverOptions& opt = {}) {
  const miqp::MiqpModel model = build_miqp(inst, reduced_rhs);
  if (model.binary_count() > opt.binary_cap) {
    throw solver_error("solve_uc: " + std::to_string(model.binary_count()) +
                       " binaries exceed the internal cap of " + std::to_string(opt.binary_cap) +
                       "; use the LP export and an external solver");
  }
  const miqp::SolveOutcome outcome = miqp::solve_bb(model, opt.gap_tol, opt.node_limit);
  if (outcome.status == miqp::SolveStatus::kInfeasible || outcome.assignment.empty()) {
    throw data_error("solve_uc: no feasible schedule for the given demand");
  }
  return unpack_solution(inst, outcome.assignment, outcome.objective);
}

/// Adapts the full solve to the staged-collection driver. The returned
/// constraint image is snapped onto the reduced right-hand side wherever it
/// exceeds it by solver roundoff (at most 1e-6), so exact dominance holds.
inline ReducedSolver make_reduced_solver(const UcInstance& inst, const UcSolverOptions& opt = {}) {
  return [inst, opt](const std::vector<double>& rhs) -> ReducedSolution {
    const UcSolution sol = solve_uc(inst, rhs, opt);
    Decision d = decision_image(sol);
    for (std::size_t t = 0; t < d.g.size(); ++t) {
      if (d.g[t] > rhs[t]) {
        if (d.g[t] > rhs[t] + 1e-6) {
          throw solver_error("make_reduced_solver: schedule misses the demand target at t=" +
                             std::to_string(t));
        }
        d.g[t] = rhs[t];
      }
    }
    return ReducedSolution{std::move(d), sol.objective};
  };
}

/// Identity solver over the reduction itself: the decision's constraint
/// image equals the reduced right-hand side. Useful when only the data-size
/// behaviour or the risk of the reduction is being studied.
inline ReducedSolver make_reduction_solver() {
  return [](const std::vector<double>& rhs) -> ReducedSolution {
    double obj = 0.0;
    for (double v : rhs) obj += v;
    return ReducedSolution{Decision{rhs}, obj};
  };
}

}  // namespace scert::ucp

#endif  // SCERT_UCP_UC_MODEL_HPP_
