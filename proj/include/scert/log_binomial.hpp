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

#ifndef SCERT_LOG_BINOMIAL_HPP_
#define SCERT_LOG_BINOMIAL_HPP_

#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "scert/errors.hpp"

namespace scert {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

/// log(exp(a) + exp(b)) without overflow.
inline double log_add(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  const double hi = a > b ? a : b;
  const double lo = a > b ? b : a;
  return hi + std::log1p(std::exp(lo - hi));
}

/// ln C(n, k) for a one-off query, via lgamma.
inline double log_choose(std::size_t n, std::size_t k) {
  if (k > n) return kNegInf;
  if (k == 0 || k == n) return 0.0;
  return std::lgamma(static_cast<double>(n) + 1.0) -
         std::lgamma(static_cast<double>(k) + 1.0) -
         std::lgamma(static_cast<double>(n - k) + 1.0);
}

/// Cached log-binomial coefficients for n up to a fixed maximum.
///
/// Stores ln(i!) for i = 0..max_n, so a (n, k) lookup is two subtractions.
/// The table is immutable after construction and safe to share between
/// threads. value(n, 0) and value(n, n) are exactly zero by construction.
class LogBinomialTable {
 public:
  explicit LogBinomialTable(std::size_t max_n) : log_factorial_(max_n + 1) {
    for (std::size_t i = 0; i <= max_n; ++i) {
      log_factorial_[i] = std::lgamma(static_cast<double>(i) + 1.0);
    }
  }

  std::size_t max_n() const { return log_factorial_.size() - 1; }

  double value(std::size_t n, std::size_t k) const {
    if (n >= log_factorial_.size()) {
      throw parameter_error("LogBinomialTable: n=" + std::to_string(n) +
                            " exceeds table capacity " + std::to_string(max_n()));
    }
    if (k > n) return kNegInf;
    if (k == 0 || k == n) return 0.0;
    return log_factorial_[n] - log_factorial_[k] - log_factorial_[n - k];
  }

 private:
  std::vector<double> log_factorial_;
};

}  // namespace scert

#endif  // SCERT_LOG_BINOMIAL_HPP_
