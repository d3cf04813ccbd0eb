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

#ifndef SCERT_ERRORS_HPP_
#define SCERT_ERRORS_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace scert {

// Invalid argument values (beta outside (0,1), k out of range, ...).
class parameter_error : public std::invalid_argument {
 public:
  explicit parameter_error(const std::string& what) : std::invalid_argument(what) {}
};

// Malformed or inconsistent input data (CSV parse failures, dimension
// mismatches between a decision and a scenario set, ...).
class data_error : public std::runtime_error {
 public:
  explicit data_error(const std::string& what) : std::runtime_error(what) {}
};

// A caller violated a documented precondition that is checked at runtime,
// e.g. passing an infeasible decision where a feasible one is required.
class contract_error : public std::logic_error {
 public:
  explicit contract_error(const std::string& what) : std::logic_error(what) {}
};

// A model cannot be built as requested (self-conflicting wraparound,
// unsupported structure, ...).
class model_error : public std::runtime_error {
 public:
  explicit model_error(const std::string& what) : std::runtime_error(what) {}
};

// A solver gave up or was asked to exceed its documented operating range.
class solver_error : public std::runtime_error {
 public:
  explicit solver_error(const std::string& what) : std::runtime_error(what) {}
};

// A scenario source ran dry before the algorithm consuming it was done.
// Carries how many rows were required in total and how many were delivered.
class insufficient_data_error : public data_error {
 public:
  insufficient_data_error(std::size_t needed, std::size_t available)
      : data_error("scenario source exhausted: " + std::to_string(needed) +
                   " rows required, only " + std::to_string(available) + " available"),
        needed_(needed),
        available_(available) {}

  std::size_t needed() const { return needed_; }
  std::size_t available() const { return available_; }

 private:
  std::size_t needed_;
  std::size_t available_;
};

}  // namespace scert

#endif  // SCERT_ERRORS_HPP_
