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

#ifndef SCERT_MIQP_QP_SOLVER_HPP_
#define SCERT_MIQP_QP_SOLVER_HPP_

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "scert/errors.hpp"

// Dense primal active-set solver for separable convex QPs:
//
//   min  sum_i d_i x_i^2 + c_i x_i        (d >= 0, possibly zero)
//   s.t. G x <= h,  E x = f,  lo <= x <= up.
//
// The Hessian is diagonal and may be singular, so the equality-constrained
// subproblems are handled through the null space of the working set: positive
// curvature gives a Newton step, zero-curvature descent directions are
// followed to the nearest blocking constraint. A feasible start is produced
// by an elastic single-artificial-variable phase, which also yields a clean
// infeasibility verdict. Warm starts take a point plus a previous active set.

namespace scert::miqp {

struct QpProblem {
  Eigen::VectorXd quad_diag;  // d, >= 0
  Eigen::VectorXd lin_cost;   // c
  Eigen::MatrixXd ineq;       // G
  Eigen::VectorXd ineq_rhs;   // h
  Eigen::MatrixXd eq;         // E
  Eigen::VectorXd eq_rhs;     // f
  Eigen::VectorXd lower;      // entries may be -inf
  Eigen::VectorXd upper;      // entries may be +inf

  Eigen::Index vars() const { return quad_diag.size(); }
};

enum class QpStatus { kOptimal, kInfeasible, kUnbounded, kIterationLimit };

struct QpResult {
  QpStatus status = QpStatus::kIterationLimit;
  Eigen::VectorXd x;
  double objective = std::numeric_limits<double>::infinity();
  std::vector<int> active;  // constraint ids, reusable as a warm start
  std::size_t iterations = 0;
  double stationarity = 0.0;
  double feasibility = 0.0;
  double complementarity = 0.0;
};

struct QpWarmStart {
  Eigen::VectorXd x;
  std::vector<int> active;
};

namespace detail {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Constraint ids: [0, mi) general <=, [mi, mi+me) equalities, then per
// variable i the pair mi+me+2i (lower) and mi+me+2i+1 (upper).
class ActiveSetQp {
 public:
  explicit ActiveSetQp(const QpProblem& p)
      : p_(p),
        n_(p.vars()),
        mi_(p.ineq.rows()),
        me_(p.eq.rows()),
        total_ids_(mi_ + me_ + 2 * n_) {
    rhs_scale_ = 1.0;
    for (Eigen::Index r = 0; r < mi_; ++r) rhs_scale_ = std::max(rhs_scale_, std::abs(p_.ineq_rhs[r]));
    for (Eigen::Index r = 0; r < me_; ++r) rhs_scale_ = std::max(rhs_scale_, std::abs(p_.eq_rhs[r]));
    for (Eigen::Index i = 0; i < n_; ++i) {
      if (std::isfinite(p_.lower[i])) rhs_scale_ = std::max(rhs_scale_, std::abs(p_.lower[i]));
      if (std::isfinite(p_.upper[i])) rhs_scale_ = std::max(rhs_scale_, std::abs(p_.upper[i]));
    }
  }

  QpResult solve(const Eigen::VectorXd& x_start, const std::vector<int>& warm_active) {
    QpResult result;
    x_ = x_start;
    in_working_ = std::vector<char>(total_ids_, 0);
    working_.clear();
    init_working_set(warm_active);

    const std::size_t max_iter = 200 + 30 * static_cast<std::size_t>(n_ + mi_ + me_);
    const std::size_t bland_after = max_iter / 2;
    bool optimal = false;

    for (std::size_t iter = 0; iter < max_iter; ++iter) {
      result.iterations = iter + 1;
      const bool bland = iter >= bland_after;
      const Eigen::Index w = static_cast<Eigen::Index>(working_.size());
      const Eigen::Index k = n_ - w;

      Eigen::MatrixXd q1, z, r_mat;
      if (w > 0) {
        Eigen::MatrixXd awt(n_, w);
        for (Eigen::Index j = 0; j < w; ++j) awt.col(j) = gradient(working_[j]);
        Eigen::HouseholderQR<Eigen::MatrixXd> qr(awt);
        Eigen::MatrixXd qfull = qr.householderQ() * Eigen::MatrixXd::Identity(n_, n_);
        q1 = qfull.leftCols(w);
        z = qfull.rightCols(k);
        r_mat = qr.matrixQR().topRows(w);
      } else {
        z = Eigen::MatrixXd::Identity(n_, n_);
      }

      const Eigen::VectorXd g = 2.0 * p_.quad_diag.cwiseProduct(x_) + p_.lin_cost;
      const double g_scale = 1.0 + g.lpNorm<Eigen::Infinity>();

      Eigen::VectorXd p_dir = Eigen::VectorXd::Zero(n_);
      bool ray = false;
      if (k > 0) {
        const Eigen::VectorXd gz = z.transpose() * g;
        Eigen::VectorXd pz = Eigen::VectorXd::Zero(k);
        const Eigen::VectorXd d_half = (2.0 * p_.quad_diag).cwiseSqrt();
        const Eigen::MatrixXd b = d_half.asDiagonal() * z;
        const double b_max = b.size() ? b.cwiseAbs().maxCoeff() : 0.0;
        if (b_max == 0.0) {
          // No curvature anywhere in the null space: pure descent or done.
          if (gz.lpNorm<Eigen::Infinity>() > 1e-9 * g_scale) {
            pz = -gz;
            pz /= pz.lpNorm<Eigen::Infinity>();
            ray = true;
          }
        } else {
          const Eigen::MatrixXd hz = b.transpose() * b;
          Eigen::LDLT<Eigen::MatrixXd> ldlt(hz);
          const Eigen::VectorXd diag = ldlt.vectorD();
          const double d_max = diag.maxCoeff();
          const double d_min = diag.minCoeff();
          if (ldlt.info() == Eigen::Success && d_min > 1e-11 * std::max(1.0, d_max)) {
            pz = ldlt.solve(-gz);
          } else {
            // Semidefinite reduced Hessian: split range and null parts via
            // the symmetric eigendecomposition (eigenvalues ascending).
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(hz);
            const Eigen::VectorXd& lambda = es.eigenvalues();
            const Eigen::MatrixXd& v = es.eigenvectors();
            const double lambda_max = lambda[k - 1];
            const double cut = 1e-10 * std::max(lambda_max, 1.0);
            Eigen::Index first_range = 0;
            while (first_range < k && lambda[first_range] <= cut) ++first_range;
            if (first_range > 0) {
              const Eigen::VectorXd g_null = v.leftCols(first_range).transpose() * gz;
              if (g_null.lpNorm<Eigen::Infinity>() > 1e-9 * g_scale) {
                pz = -(v.leftCols(first_range) * g_null);
                pz /= pz.lpNorm<Eigen::Infinity>();
                ray = true;
              }
            }
            if (!ray) {
              for (Eigen::Index i = first_range; i < k; ++i) {
                const double coef = v.col(i).dot(gz) / lambda[i];
                pz -= coef * v.col(i);
              }
            }
          }
        }
        p_dir = (w > 0) ? (z * pz).eval() : pz;
      }

      const double p_norm = p_dir.lpNorm<Eigen::Infinity>();
      const double x_scale = 1.0 + x_.lpNorm<Eigen::Infinity>();
      if (!ray && p_norm <= 1e-11 * x_scale) {
        // Stationary on the current face; examine multipliers.
        if (w == 0) {
          optimal = true;
          break;
        }
        const Eigen::VectorXd lam =
            r_mat.topRows(w).triangularView<Eigen::Upper>().solve(q1.transpose() * (-g));
        int drop = -1;
        double most_negative = -1e-9 * g_scale;
        for (Eigen::Index j = 0; j < w; ++j) {
          const int id = working_[j];
          if (is_equality(id)) continue;
          if (lam[j] < most_negative) {
            if (bland && drop >= 0) {
              if (id < working_[drop_pos_]) {
                drop = id;
                drop_pos_ = j;
              }
            } else {
              most_negative = bland ? most_negative : lam[j];
              drop = id;
              drop_pos_ = j;
            }
          }
        }
        if (drop < 0) {
          optimal = true;
          break;
        }
        remove_from_working(drop_pos_);
        continue;
      }

      // Ratio test toward the nearest blocking constraint.
      const double alpha_cap = ray ? kInf : 1.0;
      double alpha = alpha_cap;
      int blocker = -1;
      const double den_tol = 1e-11 * (1.0 + p_norm);
      for (int id = 0; id < total_ids_; ++id) {
        if (in_working_[id] || is_equality(id) || vacuous(id)) continue;
        const double den = grad_dot(id, p_dir);
        if (den <= den_tol) continue;
        const double slack = rhs(id) - value(id);
        const double a = std::max(slack, 0.0) / den;
        if (a < alpha) {
          alpha = a;
          blocker = id;
        }
      }
      if (ray && blocker < 0) {
        result.status = QpStatus::kUnbounded;
        result.x = x_;
        return result;
      }
      x_ += alpha * p_dir;
      if (blocker >= 0 && alpha < alpha_cap) add_to_working(blocker);
    }

    result.x = x_;
    finalize(result, optimal);
    return result;
  }

  // Deterministic default start: midpoints of finite boxes.
  Eigen::VectorXd default_start() const {
    Eigen::VectorXd x(n_);
    for (Eigen::Index i = 0; i < n_; ++i) {
      const double lo = p_.lower[i];
      const double hi = p_.upper[i];
      if (std::isfinite(lo) && std::isfinite(hi)) {
        x[i] = 0.5 * (lo + hi);
      } else if (std::isfinite(lo)) {
        x[i] = lo;
      } else if (std::isfinite(hi)) {
        x[i] = hi;
      } else {
        x[i] = 0.0;
      }
    }
    return x;
  }

  Eigen::VectorXd clamp_to_bounds(Eigen::VectorXd x) const {
    for (Eigen::Index i = 0; i < n_; ++i) x[i] = std::min(std::max(x[i], p_.lower[i]), p_.upper[i]);
    return x;
  }

  double max_general_violation(const Eigen::VectorXd& x) const {
    double worst = 0.0;
    if (mi_ > 0) worst = std::max(worst, (p_.ineq * x - p_.ineq_rhs).maxCoeff());
    if (me_ > 0) worst = std::max(worst, (p_.eq * x - p_.eq_rhs).cwiseAbs().maxCoeff());
    return worst;
  }

  double rhs_scale() const { return rhs_scale_; }

 private:
  bool is_equality(int id) const { return id >= mi_ && id < mi_ + me_; }
  bool is_general(int id) const { return id < mi_; }

  // Bound constraints on infinite bounds do not exist.
  bool vacuous(int id) const {
    if (id < mi_ + me_) return false;
    const int off = id - mi_ - static_cast<int>(me_);
    const Eigen::Index var = off / 2;
    return (off % 2 == 0) ? !std::isfinite(p_.lower[var]) : !std::isfinite(p_.upper[var]);
  }

  Eigen::VectorXd gradient(int id) const {
    if (is_general(id)) return p_.ineq.row(id).transpose();
    if (is_equality(id)) return p_.eq.row(id - mi_).transpose();
    const int off = id - mi_ - static_cast<int>(me_);
    Eigen::VectorXd a = Eigen::VectorXd::Zero(n_);
    a[off / 2] = (off % 2 == 0) ? -1.0 : 1.0;
    return a;
  }

  double grad_dot(int id, const Eigen::VectorXd& v) const {
    if (is_general(id)) return p_.ineq.row(id).dot(v);
    if (is_equality(id)) return p_.eq.row(id - mi_).dot(v);
    const int off = id - mi_ - static_cast<int>(me_);
    return (off % 2 == 0) ? -v[off / 2] : v[off / 2];
  }

  double value(int id) const { return grad_dot(id, x_); }

  double rhs(int id) const {
    if (is_general(id)) return p_.ineq_rhs[id];
    if (is_equality(id)) return p_.eq_rhs[id - mi_];
    const int off = id - mi_ - static_cast<int>(me_);
    const Eigen::Index var = off / 2;
    return (off % 2 == 0) ? -p_.lower[var] : p_.upper[var];
  }

  void add_to_working(int id) {
    working_.push_back(id);
    in_working_[id] = 1;
  }

  void remove_from_working(Eigen::Index pos) {
    in_working_[working_[pos]] = 0;
    working_.erase(working_.begin() + pos);
  }

  // Seeds the working set: equalities first, then previously-active ids that
  // are still active, each admitted only if independent of what is already
  // in (incremental Gram-Schmidt test).
  void init_working_set(const std::vector<int>& warm_active) {
    std::vector<int> candidates;
    for (int r = 0; r < me_; ++r) candidates.push_back(mi_ + r);
    // Rows admitted here keep their current slack for the whole solve, so
    // only machine-precision-active rows qualify; anything looser would
    // surface later as a complementarity residual.
    const double act_tol = 1e-11 * rhs_scale_;
    for (int id : warm_active) {
      if (id < 0 || id >= total_ids_ || is_equality(id) || vacuous(id)) continue;
      if (std::abs(rhs(id) - value(id)) <= act_tol) candidates.push_back(id);
    }
    if (warm_active.empty()) {
      for (Eigen::Index i = 0; i < n_; ++i) {
        const int lo_id = mi_ + static_cast<int>(me_) + 2 * static_cast<int>(i);
        if (!vacuous(lo_id) && std::abs(rhs(lo_id) - value(lo_id)) <= act_tol) {
          candidates.push_back(lo_id);
          continue;
        }
        if (!vacuous(lo_id + 1) && std::abs(rhs(lo_id + 1) - value(lo_id + 1)) <= act_tol) {
          candidates.push_back(lo_id + 1);
        }
      }
    }

    Eigen::MatrixXd basis(n_, std::min<Eigen::Index>(n_, candidates.size()));
    Eigen::Index used = 0;
    for (int id : candidates) {
      if (in_working_[id] || used == n_) continue;
      Eigen::VectorXd a = gradient(id);
      Eigen::VectorXd res = a;
      if (used > 0) res -= basis.leftCols(used) * (basis.leftCols(used).transpose() * a);
      const double res_norm = res.norm();
      if (res_norm > 1e-8 * (1.0 + a.norm())) {
        basis.col(used++) = res / res_norm;
        add_to_working(id);
      } else if (is_equality(id)) {
        // Redundant equality: consistent by feasibility of the start point.
      }
    }
  }

  void finalize(QpResult& result, bool optimal) const {
    const Eigen::VectorXd g = 2.0 * p_.quad_diag.cwiseProduct(x_) + p_.lin_cost;
    Eigen::VectorXd stat = g;
    double comp = 0.0;
    if (!working_.empty()) {
      const Eigen::Index w = static_cast<Eigen::Index>(working_.size());
      Eigen::MatrixXd awt(n_, w);
      for (Eigen::Index j = 0; j < w; ++j) awt.col(j) = gradient(working_[j]);
      const Eigen::VectorXd lam = awt.colPivHouseholderQr().solve(-g);
      stat += awt * lam;
      for (Eigen::Index j = 0; j < w; ++j) {
        const int id = working_[j];
        if (!is_equality(id)) comp = std::max(comp, std::abs(lam[j] * (rhs(id) - value(id))));
      }
    }
    double feas = max_general_violation(x_);
    for (Eigen::Index i = 0; i < n_; ++i) {
      feas = std::max(feas, p_.lower[i] - x_[i]);
      feas = std::max(feas, x_[i] - p_.upper[i]);
    }
    result.stationarity = stat.lpNorm<Eigen::Infinity>();
    result.feasibility = std::max(feas, 0.0);
    result.complementarity = comp;
    result.objective = p_.quad_diag.cwiseProduct(x_).dot(x_) + p_.lin_cost.dot(x_);
    result.active.assign(working_.begin(), working_.end());
    std::sort(result.active.begin(), result.active.end());
    result.status = optimal ? QpStatus::kOptimal : QpStatus::kIterationLimit;
  }

  const QpProblem& p_;
  Eigen::Index n_, mi_, me_;
  int total_ids_;
  double rhs_scale_;
  Eigen::VectorXd x_;
  std::vector<int> working_;
  std::vector<char> in_working_;
  Eigen::Index drop_pos_ = 0;
};

// Elastic feasibility phase: minimize a single artificial variable that
// relaxes exactly the rows violated at the clamped start point. A feasible
// problem drives it to its zero lower bound; a positive optimum certifies
// infeasibility.
inline QpResult find_feasible_point(const QpProblem& p, const Eigen::VectorXd& seed) {
  ActiveSetQp helper(p);
  const Eigen::VectorXd x0 = helper.clamp_to_bounds(seed);
  const double feas_tol = 1e-9 * helper.rhs_scale();

  QpResult out;
  if (helper.max_general_violation(x0) <= feas_tol) {
    out.status = QpStatus::kOptimal;
    out.x = x0;
    return out;
  }

  const Eigen::Index n = p.vars();
  const Eigen::Index mi = p.ineq.rows();
  const Eigen::Index me = p.eq.rows();

  QpProblem ph;
  ph.quad_diag = Eigen::VectorXd::Zero(n + 1);
  ph.lin_cost = Eigen::VectorXd::Zero(n + 1);
  ph.lin_cost[n] = 1.0;
  ph.eq.resize(0, n + 1);
  ph.eq_rhs.resize(0);
  ph.ineq.resize(mi + 2 * me, n + 1);
  ph.ineq_rhs.resize(mi + 2 * me);

  double theta0 = 0.0;
  for (Eigen::Index r = 0; r < mi; ++r) {
    const double viol = p.ineq.row(r).dot(x0) - p.ineq_rhs[r];
    ph.ineq.row(r).head(n) = p.ineq.row(r);
    ph.ineq(r, n) = viol > feas_tol ? -1.0 : 0.0;
    ph.ineq_rhs[r] = p.ineq_rhs[r];
    theta0 = std::max(theta0, viol);
  }
  for (Eigen::Index r = 0; r < me; ++r) {
    const double resid = p.eq.row(r).dot(x0) - p.eq_rhs[r];
    ph.ineq.row(mi + 2 * r).head(n) = p.eq.row(r);
    ph.ineq(mi + 2 * r, n) = resid > feas_tol ? -1.0 : 0.0;
    ph.ineq_rhs[mi + 2 * r] = p.eq_rhs[r];
    ph.ineq.row(mi + 2 * r + 1).head(n) = -p.eq.row(r);
    ph.ineq(mi + 2 * r + 1, n) = resid < -feas_tol ? -1.0 : 0.0;
    ph.ineq_rhs[mi + 2 * r + 1] = -p.eq_rhs[r];
    theta0 = std::max(theta0, std::abs(resid));
  }
  ph.lower = Eigen::VectorXd(n + 1);
  ph.upper = Eigen::VectorXd(n + 1);
  ph.lower.head(n) = p.lower;
  ph.upper.head(n) = p.upper;
  theta0 = theta0 * (1.0 + 1e-9) + 1e-12;
  ph.lower[n] = 0.0;
  ph.upper[n] = theta0 * 1.5 + 1.0;

  Eigen::VectorXd start(n + 1);
  start.head(n) = x0;
  start[n] = theta0;

  ActiveSetQp phase(ph);
  QpResult pr = phase.solve(start, {});
  if (pr.status != QpStatus::kOptimal) {
    out.status = pr.status == QpStatus::kUnbounded ? QpStatus::kIterationLimit : pr.status;
    return out;
  }
  if (pr.x[n] > feas_tol) {
    out.status = QpStatus::kInfeasible;
    return out;
  }
  out.status = QpStatus::kOptimal;
  out.x = helper.clamp_to_bounds(pr.x.head(n));
  return out;
}

}  // namespace detail

/// Solves the QP. An optional warm start provides a near-feasible point and
/// the active set of a related problem; both are validated before use.
inline QpResult solve_qp(const QpProblem& p, const QpWarmStart* warm = nullptr) {
  const Eigen::Index n = p.vars();
  if (p.lin_cost.size() != n || p.lower.size() != n || p.upper.size() != n ||
      p.ineq.cols() != (p.ineq.rows() ? n : p.ineq.cols()) ||
      p.eq.cols() != (p.eq.rows() ? n : p.eq.cols())) {
    throw parameter_error("solve_qp: inconsistent problem dimensions");
  }
  if (p.quad_diag.size() && p.quad_diag.minCoeff() < 0.0) {
    throw parameter_error("solve_qp: negative quadratic coefficient");
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    if (p.lower[i] > p.upper[i]) {
      QpResult r;
      r.status = QpStatus::kInfeasible;
      return r;
    }
  }

  detail::ActiveSetQp solver(p);
  const Eigen::VectorXd seed = warm ? warm->x : solver.default_start();
  QpResult feas = detail::find_feasible_point(p, seed);
  if (feas.status != QpStatus::kOptimal) return feas;

  const std::vector<int> warm_active = warm ? warm->active : std::vector<int>{};
  return solver.solve(feas.x, warm_active);
}

}  // namespace scert::miqp

#endif  // SCERT_MIQP_QP_SOLVER_HPP_
