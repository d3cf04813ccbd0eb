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

#ifndef SCERT_UCP_SYNTHETIC_DEMAND_HPP_
#define SCERT_UCP_SYNTHETIC_DEMAND_HPP_

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "scert/sizing.hpp"
#include "scert/ucp/uc_model.hpp"

// Synthetic daily demand profiles: a morning/evening double-peak shape on
// top of a base load, a stepped seasonal offset that repeats in 91-day
// blocks, and zero-mean Gaussian noise. The noise is split into a day-wide
// level shift and an hour-local part (correlation 0.9 across hours of the
// same day), so high-demand days tend to dominate several hours at once, the
// way real aggregate load behaves. Output is bit-reproducible for a seed:
// the uniform-to-normal mapping is done in-house rather than left to the
// standard library's unspecified distributions.

namespace scert::ucp {

struct SynthDemandParams {
  double base = 26.0;         // GW
  double daily_amp = 7.0;     // GW, scales the double-peak shape
  double noise_sd = 1.2;      // GW, total per-hour standard deviation
  double seasonal_amp = 2.0;  // GW, scales the per-season offsets
};

namespace detail {

inline constexpr double kDayCorrelation = 0.9;
inline constexpr int kSeasonDays = 91;
inline constexpr double kSeasonOffsets[4] = {1.0, -0.2, 0.5, -0.1};

class DeterministicGauss {
 public:
  explicit DeterministicGauss(std::uint64_t seed) : rng_(seed) {}

  double operator()() {
    const double u1 = uniform01();
    const double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  }

 private:
  double uniform01() {
    // 53-bit mantissa, offset by half a step: never exactly 0 or 1.
    return (static_cast<double>(rng_() >> 11) + 0.5) * 0x1p-53;
  }
  std::mt19937_64 rng_;
};

inline double demand_shape(double hour_of_day) {
  const double morning = (hour_of_day - 11.5) / 3.2;
  const double evening = (hour_of_day - 20.0) / 2.2;
  return std::exp(-morning * morning) + 0.85 * std::exp(-evening * evening);
}

}  // namespace detail

/// Endless day-by-day generator; day i of a given seed is always the same
/// profile no matter how the days are consumed.
class SyntheticDemandStream {
 public:
  SyntheticDemandStream(std::uint64_t seed, int hours, SynthDemandParams params = {})
      : gauss_(seed), hours_(hours), params_(params) {
    if (hours_ < 1) throw parameter_error("SyntheticDemandStream: hours must be >= 1");
  }

  std::vector<double> next_day() {
    const int season = (day_ / detail::kSeasonDays) % 4;
    const double season_offset = params_.seasonal_amp * detail::kSeasonOffsets[season];
    const double day_level = gauss_() * params_.noise_sd * detail::kDayCorrelation;
    const double hour_sd =
        params_.noise_sd * std::sqrt(1.0 - detail::kDayCorrelation * detail::kDayCorrelation);
    std::vector<double> day(hours_);
    for (int t = 0; t < hours_; ++t) {
      const double hour = (t + 0.5) * 24.0 / hours_;
      double v = params_.base + params_.daily_amp * detail::demand_shape(hour) + season_offset +
                 day_level + gauss_() * hour_sd;
      day[t] = v < 0.0 ? 0.0 : v;
    }
    ++day_;
    return day;
  }

  int hours() const { return hours_; }

 private:
  detail::DeterministicGauss gauss_;
  int hours_;
  SynthDemandParams params_;
  int day_ = 0;
};

/// First n_days of the stream for the seed, as a demand matrix.
inline DemandData synth_demand(std::uint64_t seed, std::size_t n_days, int hours,
                               SynthDemandParams params = {}) {
  SyntheticDemandStream stream(seed, hours, params);
  std::vector<double> flat;
  flat.reserve(n_days * static_cast<std::size_t>(hours));
  for (std::size_t i = 0; i < n_days; ++i) {
    const auto day = stream.next_day();
    flat.insert(flat.end(), day.begin(), day.end());
  }
  return DemandData(n_days, static_cast<std::size_t>(hours), std::move(flat));
}

/// Scenario rows (negated demand) drawn from the synthetic stream; never
/// runs dry.
class SyntheticDemandSource : public ScenarioSource {
 public:
  SyntheticDemandSource(std::uint64_t seed, int hours, SynthDemandParams params = {})
      : stream_(seed, hours, params) {}

  std::optional<std::vector<double>> next() override {
    std::vector<double> day = stream_.next_day();
    for (double& v : day) v = -v;
    return day;
  }

  std::size_t dimension() const override { return static_cast<std::size_t>(stream_.hours()); }

 private:
  SyntheticDemandStream stream_;
};

/// Scenario rows (negated demand) from a fixed demand table, in file order.
class DemandTableSource : public ScenarioSource {
 public:
  explicit DemandTableSource(DemandData demand) : demand_(std::move(demand)) {}

  std::optional<std::vector<double>> next() override {
    if (cursor_ >= demand_.days()) return std::nullopt;
    std::vector<double> row(demand_.hours());
    for (std::size_t t = 0; t < demand_.hours(); ++t) row[t] = -demand_.at(cursor_, t);
    ++cursor_;
    return row;
  }

  std::size_t dimension() const override { return demand_.hours(); }

 private:
  DemandData demand_;
  std::size_t cursor_ = 0;
};

}  // namespace scert::ucp

#endif  // SCERT_UCP_SYNTHETIC_DEMAND_HPP_
