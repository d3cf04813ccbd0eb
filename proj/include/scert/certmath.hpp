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

#ifndef SCERT_CERTMATH_HPP_
#define SCERT_CERTMATH_HPP_

#include <cassert>
#include <cmath>
#include <cstddef>
#include <string>

#include "scert/errors.hpp"
#include "scert/log_binomial.hpp"

// Numerics behind the distribution-free risk certificates.
//
// Everything here works on binomial-tail quantities that underflow double
// precision long before the scenario counts of interest (N ~ 1e4 with
// beta ~ 1e-6), so all sums are accumulated in the log domain.

namespace scert {

/// Arguments of the violation level: number of scenarios N, confidence
/// parameter beta in (0,1), and the complexity argument k in [0, N].
struct EpsParams {
  std::size_t n_scenarios = 0;
  double beta = 0.0;
  std::size_t complexity = 0;

  void validate() const {
    if (n_scenarios == 0) throw parameter_error("EpsParams: n_scenarios must be >= 1");
    if (!(beta > 0.0 && beta < 1.0)) {
      throw parameter_error("EpsParams: beta must lie in (0,1), got " + std::to_string(beta));
    }
    if (complexity > n_scenarios) {
      throw parameter_error("EpsParams: complexity k=" + std::to_string(complexity) +
                            " exceeds n_scenarios=" + std::to_string(n_scenarios));
    }
  }
};

namespace detail {

// Sign of  (beta/N) * sum_{m=k}^{N-1} C(m,k) t^{m-k}  -  C(N,k) t^{N-k}
// for t in (0,1], computed as a comparison of the logs of the two positive
// parts. Requires k < N. The m = k term keeps the first part strictly
// positive as t -> 0+, so the sign there is + without evaluating at t = 0.
class ViolationRootFn {
 public:
  ViolationRootFn(std::size_t n, std::size_t k, double beta, const LogBinomialTable& table)
      : n_(n), k_(k), table_(table), log_beta_over_n_(std::log(beta) - std::log(static_cast<double>(n))),
        log_choose_n_k_(table.value(n, k)) {
#ifndef NDEBUG
    // Endpoint sanity at t = 1: sum_{m=k}^{N-1} C(m,k) telescopes to C(N,k+1).
    double s = kNegInf;
    for (std::size_t m = k_; m < n_; ++m) s = log_add(s, table_.value(m, k_));
    assert(std::abs(s - table_.value(n_, k_ + 1)) <= 1e-9 * (1.0 + std::abs(s)));
#endif
  }

  bool positive_at(double t) const {
    const double log_t = std::log(t);
    double lhs = kNegInf;
    for (std::size_t m = k_; m < n_; ++m) {
      lhs = log_add(lhs, table_.value(m, k_) + static_cast<double>(m - k_) * log_t);
    }
    lhs += log_beta_over_n_;
    const double rhs = log_choose_n_k_ + static_cast<double>(n_ - k_) * log_t;
    return lhs > rhs;
  }

 private:
  std::size_t n_;
  std::size_t k_;
  const LogBinomialTable& table_;
  double log_beta_over_n_;
  double log_choose_n_k_;
};

}  // namespace detail

/// Violation level: the confidence-(1-beta) upper bound on the risk of a
/// scenario decision whose observed complexity is k.
///
/// For k = N the level is 1. Otherwise it is 1 - t(k), with t(k) the unique
/// root in [0,1] of
///
///   (beta/N) * sum_{m=k}^{N-1} C(m,k) t^{m-k}  =  C(N,k) t^{N-k}.
///
/// The left side dominates as t -> 0+ and the right side dominates at t = 1,
/// so the root is bracketed by [0,1] and located by bisection to an absolute
/// tolerance of 1e-10 on t. The function is non-decreasing in k and
/// non-increasing in N.
inline double violation_level(const EpsParams& p, const LogBinomialTable& table) {
  p.validate();
  const std::size_t n = p.n_scenarios;
  const std::size_t k = p.complexity;
  if (k == n) return 1.0;

  const detail::ViolationRootFn fn(n, k, p.beta, table);
  double lo = 0.0;  // sign is + at t -> 0+
  double hi = 1.0;
  if (fn.positive_at(1.0)) return 0.0;  // cannot happen for beta < 1; belt and braces
  while (hi - lo > 1e-10) {
    const double mid = 0.5 * (lo + hi);
    if (fn.positive_at(mid)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double t = 0.5 * (lo + hi);
  const double eps = 1.0 - t;
  return eps < 0.0 ? 0.0 : (eps > 1.0 ? 1.0 : eps);
}

inline double violation_level(const EpsParams& p) {
  p.validate();
  const LogBinomialTable table(p.n_scenarios);
  return violation_level(p, table);
}

inline double violation_level(std::size_t n_scenarios, double beta, std::size_t complexity) {
  return violation_level(EpsParams{n_scenarios, beta, complexity});
}

/// ln of the binomial lower tail  sum_{m=0}^{j-1} C(n,m) p^m (1-p)^{n-m},
/// i.e. the log-probability that a Binomial(n, p) draw is strictly below j.
/// Requires 1 <= j <= n and p in (0,1). For j = 1 the sum is the single
/// term (1-p)^n and the result is exactly n*log1p(-p).
inline double log_binomial_lower_tail(std::size_t n, std::size_t j, double p,
                                      const LogBinomialTable& table) {
  if (j < 1 || j > n) {
    throw parameter_error("log_binomial_lower_tail: need 1 <= j <= n, got j=" +
                          std::to_string(j) + ", n=" + std::to_string(n));
  }
  if (!(p > 0.0 && p < 1.0)) {
    throw parameter_error("log_binomial_lower_tail: p must lie in (0,1), got " +
                          std::to_string(p));
  }
  const double log_p = std::log(p);
  const double log_1mp = std::log1p(-p);
  if (j == 1) return static_cast<double>(n) * log_1mp;
  double acc = kNegInf;
  for (std::size_t m = 0; m < j; ++m) {
    acc = log_add(acc, table.value(n, m) + static_cast<double>(m) * log_p +
                           static_cast<double>(n - m) * log_1mp);
  }
  return acc;
}

inline double log_binomial_lower_tail(std::size_t n, std::size_t j, double p) {
  const LogBinomialTable table(n);
  return log_binomial_lower_tail(n, j, p, table);
}

/// Smallest epsilon in (0,1) whose binomial lower tail with n draws and
/// threshold q is at most beta; bisection to 1e-10 on epsilon. This is the
/// a-priori risk level attached to n scenarios and q constraint components.
/// The tail is strictly decreasing in epsilon, which gives the bracket.
inline double a_priori_epsilon(std::size_t n, std::size_t q, double beta) {
  if (q < 1 || n < q) {
    throw parameter_error("a_priori_epsilon: need n >= q >= 1, got n=" + std::to_string(n) +
                          ", q=" + std::to_string(q));
  }
  if (!(beta > 0.0 && beta < 1.0)) {
    throw parameter_error("a_priori_epsilon: beta must lie in (0,1), got " +
                          std::to_string(beta));
  }
  const LogBinomialTable table(n);
  const double log_beta = std::log(beta);
  double lo = 0.0;  // tail -> 1 > beta
  double hi = 1.0;  // tail -> 0 < beta
  while (hi - lo > 1e-10) {
    const double mid = 0.5 * (lo + hi);
    if (log_binomial_lower_tail(n, q, mid, table) > log_beta) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace scert

#endif  // SCERT_CERTMATH_HPP_
