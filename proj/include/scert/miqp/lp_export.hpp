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

#ifndef SCERT_MIQP_LP_EXPORT_HPP_
#define SCERT_MIQP_LP_EXPORT_HPP_

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <string>
#include <vector>

#include "scert/errors.hpp"
#include "scert/miqp/model.hpp"

// LP-format text export (CPLEX dialect): linear objective plus the bracketed
// quadratic block, named constraint rows, a Bounds section for continuous
// variables and a Binaries section. Output is deterministic, so exported
// files can be kept as golden references.

namespace scert::miqp {

namespace detail {

inline std::string lp_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline std::string lp_name(const std::string& raw, std::size_t fallback_idx) {
  std::string out;
  for (char c : raw) {
    out.push_back(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' ? c : '_');
  }
  if (out.empty()) out = "v" + std::to_string(fallback_idx);
  if (std::isdigit(static_cast<unsigned char>(out.front()))) out.insert(out.begin(), 'v');
  return out;
}

// Accumulates "+ coeff name" tokens and wraps long lines.
class TermWriter {
 public:
  TermWriter(std::ostream& out, int terms_per_line) : out_(out), per_line_(terms_per_line) {}

  void add(double coeff, const std::string& name, const char* suffix = "") {
    if (count_ == 0) {
      if (coeff < 0) out_ << "- ";
    } else {
      out_ << (coeff < 0 ? " - " : " + ");
      if (count_ % per_line_ == 0) out_ << "\n   ";
    }
    out_ << lp_number(std::abs(coeff)) << ' ' << name << suffix;
    ++count_;
  }

  int count() const { return count_; }

 private:
  std::ostream& out_;
  int per_line_;
  int count_ = 0;
};

}  // namespace detail

inline void export_lp(const MiqpModel& m, std::ostream& out,
                      const std::string& title = "scert model") {
  std::vector<std::string> names(m.total_vars());
  for (std::size_t i = 0; i < m.total_vars(); ++i) names[i] = detail::lp_name(m.name(i), i);

  out << "\\ " << title << "\n";
  out << "Minimize\n obj: ";
  detail::TermWriter lin(out, 6);
  for (std::size_t i = 0; i < m.total_vars(); ++i) {
    if (m.lin(i) != 0.0) lin.add(m.lin(i), names[i]);
  }
  bool any_quad = false;
  for (std::size_t i = 0; i < m.total_vars(); ++i) any_quad = any_quad || m.quad(i) != 0.0;
  if (any_quad) {
    if (lin.count() > 0) out << " + ";
    out << "[ ";
    detail::TermWriter quad(out, 6);
    for (std::size_t i = 0; i < m.total_vars(); ++i) {
      // The bracket block carries doubled coefficients under the /2 convention.
      if (m.quad(i) != 0.0) quad.add(2.0 * m.quad(i), names[i], " ^ 2");
    }
    out << " ] / 2";
  }
  out << "\n";

  out << "Subject To\n";
  std::size_t row_idx = 0;
  for (const auto& row : m.rows()) {
    if (row.terms.empty()) {
      throw model_error("export_lp: row '" + row.tag + "' has no terms");
    }
    out << ' ' << detail::lp_name(row.tag.empty() ? "r" + std::to_string(row_idx) : row.tag,
                                  row_idx)
        << ": ";
    detail::TermWriter terms(out, 6);
    for (const auto& [var, coeff] : row.terms) terms.add(coeff, names[var]);
    switch (row.relation) {
      case Relation::kLe: out << " <= "; break;
      case Relation::kGe: out << " >= "; break;
      case Relation::kEq: out << " = "; break;
    }
    out << detail::lp_number(row.rhs) << "\n";
    ++row_idx;
  }

  out << "Bounds\n";
  for (std::size_t i = 0; i < m.total_vars(); ++i) {
    if (m.is_binary(i)) continue;
    const double lo = m.lower(i);
    const double hi = m.upper(i);
    const bool lo_fin = std::isfinite(lo);
    const bool hi_fin = std::isfinite(hi);
    if (lo_fin && hi_fin) {
      out << ' ' << detail::lp_number(lo) << " <= " << names[i] << " <= "
          << detail::lp_number(hi) << "\n";
    } else if (lo_fin) {
      out << ' ' << names[i] << " >= " << detail::lp_number(lo) << "\n";
    } else if (hi_fin) {
      out << ' ' << names[i] << " <= " << detail::lp_number(hi) << "\n";
    } else {
      out << ' ' << names[i] << " free\n";
    }
  }

  bool any_binary = false;
  for (std::size_t i = 0; i < m.total_vars(); ++i) any_binary = any_binary || m.is_binary(i);
  if (any_binary) {
    out << "Binaries\n";
    int on_line = 0;
    for (std::size_t i = 0; i < m.total_vars(); ++i) {
      if (!m.is_binary(i)) continue;
      out << ' ' << names[i];
      if (++on_line % 8 == 0) out << "\n";
    }
    if (on_line % 8 != 0) out << "\n";
  }
  out << "End\n";
}

inline void export_lp_file(const MiqpModel& m, const std::string& path,
                           const std::string& title = "scert model") {
  std::ofstream out(path);
  if (!out) throw data_error("cannot open '" + path + "' for writing");
  export_lp(m, out, title);
}

}  // namespace scert::miqp

#endif  // SCERT_MIQP_LP_EXPORT_HPP_
