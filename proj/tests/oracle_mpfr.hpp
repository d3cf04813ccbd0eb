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

// Test-only extended-precision oracles, independent of the library's
// log-domain arithmetic: 200-bit MPFR evaluation of the violation-level root
// equation, bracketed on a 1e7-point grid and refined by bisection.

#ifndef SCERT_TESTS_ORACLE_MPFR_HPP_
#define SCERT_TESTS_ORACLE_MPFR_HPP_

#include <mpfr.h>

#include <cstddef>
#include <stdexcept>
#include <utility>

namespace scert_test {

// Minimal RAII wrapper around a 200-bit mpfr value.
class Real {
 public:
  Real() { mpfr_init2(v_, 200); mpfr_set_zero(v_, 1); }
  explicit Real(double d) { mpfr_init2(v_, 200); mpfr_set_d(v_, d, MPFR_RNDN); }
  Real(const Real& o) { mpfr_init2(v_, 200); mpfr_set(v_, o.v_, MPFR_RNDN); }
  Real& operator=(const Real& o) {
    if (this != &o) mpfr_set(v_, o.v_, MPFR_RNDN);
    return *this;
  }
  ~Real() { mpfr_clear(v_); }

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }

  Real& operator+=(const Real& o) { mpfr_add(v_, v_, o.v_, MPFR_RNDN); return *this; }
  Real& operator*=(const Real& o) { mpfr_mul(v_, v_, o.v_, MPFR_RNDN); return *this; }
  Real& mul_ui(unsigned long u) { mpfr_mul_ui(v_, v_, u, MPFR_RNDN); return *this; }
  Real& div_ui(unsigned long u) { mpfr_div_ui(v_, v_, u, MPFR_RNDN); return *this; }

  bool operator>(const Real& o) const { return mpfr_cmp(v_, o.v_) > 0; }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

 private:
  mpfr_t v_;
};

// Sign of (beta/n) * sum_{m=k}^{n-1} C(m,k) t^(m-k) - C(n,k) t^(n-k) at t,
// evaluated in 200-bit arithmetic with exact integer coefficient recursion.
inline bool root_fn_positive(std::size_t n, std::size_t k, double beta, const Real& t) {
  Real sum;               // running sum of C(m,k) t^(m-k)
  Real coeff(1.0);        // C(m,k), starting at m = k
  Real power(1.0);        // t^(m-k)
  for (std::size_t m = k; m < n; ++m) {
    Real term = coeff;
    term *= power;
    sum += term;
    // C(m+1,k) = C(m,k) * (m+1) / (m+1-k)
    coeff.mul_ui(static_cast<unsigned long>(m + 1));
    coeff.div_ui(static_cast<unsigned long>(m + 1 - k));
    power *= t;
  }
  Real lhs(beta);
  lhs.div_ui(static_cast<unsigned long>(n));
  lhs *= sum;

  // coeff now holds C(n,k); power holds t^(n-k).
  Real rhs = coeff;
  rhs *= power;
  return lhs > rhs;
}

// Violation level 1 - t(k): the sign change is first bracketed on the
// uniform 1e7-point grid over [0,1] (binary search is enough, the root is
// unique), then the bracket is narrowed to 1e-12 by plain bisection.
inline double oracle_violation_level(std::size_t n, double beta, std::size_t k) {
  if (k == n) return 1.0;
  constexpr unsigned long kGrid = 10'000'000;
  const auto grid_positive = [&](unsigned long idx) {
    Real t(static_cast<double>(idx));
    t.div_ui(kGrid);
    return root_fn_positive(n, k, beta, t);
  };

  unsigned long lo = 0;  // positive as t -> 0+, never evaluated at 0 itself
  unsigned long hi = kGrid;
  if (grid_positive(hi)) throw std::logic_error("oracle: no sign change on the grid");
  while (hi - lo > 1) {
    const unsigned long mid = lo + (hi - lo) / 2;
    if (mid == 0 || grid_positive(mid)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }

  Real t_lo(static_cast<double>(lo));
  t_lo.div_ui(kGrid);
  Real t_hi(static_cast<double>(hi));
  t_hi.div_ui(kGrid);
  Real half(0.5);
  for (int iter = 0; iter < 60; ++iter) {  // bracket width 1e-7 * 2^-60 << 1e-12
    Real mid = t_lo;
    mid += t_hi;
    mid *= half;
    const bool pos = mpfr_sgn(mid.get()) > 0 ? root_fn_positive(n, k, beta, mid) : true;
    if (pos) {
      t_lo = mid;
    } else {
      t_hi = mid;
    }
  }
  Real mid = t_lo;
  mid += t_hi;
  mid *= half;
  return 1.0 - mid.to_double();
}

}  // namespace scert_test

#endif  // SCERT_TESTS_ORACLE_MPFR_HPP_
