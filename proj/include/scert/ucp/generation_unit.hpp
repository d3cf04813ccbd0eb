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

#ifndef SCERT_UCP_GENERATION_UNIT_HPP_
#define SCERT_UCP_GENERATION_UNIT_HPP_

#include <cctype>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "scert/errors.hpp"

namespace scert::ucp {

/// Contiguous admissible power band of a unit, in GW.
struct OperatingZone {
  double p_min = 0.0;
  double p_max = 0.0;
};

/// Thermal generation unit. Fuel cost is quadratic in the produced power
/// (cost_quad in EUR/GW^2, cost_lin in EUR/GW, cost_commit in EUR per
/// committed hour); switching a unit on or off costs startup_cost /
/// shutdown_cost EUR per event. Power moves at most ramp_up GW/h upward and
/// ramp_down GW/h downward, and once switched the unit stays on (off) for at
/// least min_up (min_down) hours. Power is either zero or inside one of the
/// non-overlapping, ascending operating zones.
struct GenUnit {
  double cost_quad = 0.0;
  double cost_lin = 0.0;
  double cost_commit = 0.0;
  double startup_cost = 0.0;
  double shutdown_cost = 0.0;
  double ramp_down = 0.0;
  double ramp_up = 0.0;
  int min_up = 1;
  int min_down = 1;
  std::vector<OperatingZone> zones;

  double max_power() const {
    return zones.empty() ? 0.0 : zones.back().p_max;
  }

  void validate(const std::string& label) const {
    if (cost_quad < 0.0) throw parameter_error(label + ": quadratic fuel cost must be >= 0");
    if (ramp_down < 0.0 || ramp_up < 0.0) throw parameter_error(label + ": ramps must be >= 0");
    if (min_up < 1 || min_down < 1) throw parameter_error(label + ": min_up/min_down must be >= 1");
    if (zones.empty()) throw parameter_error(label + ": at least one operating zone required");
    for (std::size_t z = 0; z < zones.size(); ++z) {
      if (zones[z].p_min > zones[z].p_max) {
        throw parameter_error(label + ": zone " + std::to_string(z + 1) + " has p_min > p_max");
      }
      if (z > 0 && zones[z - 1].p_max >= zones[z].p_min) {
        throw parameter_error(label + ": zones must be ascending and non-overlapping");
      }
    }
  }
};

/// A fleet of units scheduled over `horizon` one-hour slots.
struct UcInstance {
  std::vector<GenUnit> units;
  int horizon = 24;

  void validate() const {
    if (horizon < 2) throw parameter_error("UcInstance: horizon must be >= 2");
    if (units.empty()) throw parameter_error("UcInstance: at least one unit required");
    for (std::size_t j = 0; j < units.size(); ++j) {
      units[j].validate("unit " + std::to_string(j + 1));
    }
  }
};

namespace detail {

inline std::string ini_trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

struct IniSection {
  std::string name;
  std::map<std::string, std::pair<std::string, std::size_t>> entries;  // key -> (value, line)
};

inline std::vector<IniSection> parse_ini(std::istream& in, const std::string& source) {
  std::vector<IniSection> sections;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::size_t hash = line.find_first_of("#;");
    if (hash != std::string::npos) line.erase(hash);
    line = ini_trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        throw data_error(source + ":" + std::to_string(line_no) + ": unterminated section header");
      }
      sections.push_back({ini_trim(line.substr(1, line.size() - 2)), {}});
      continue;
    }
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw data_error(source + ":" + std::to_string(line_no) + ": expected 'key = value'");
    }
    if (sections.empty()) {
      throw data_error(source + ":" + std::to_string(line_no) + ": key outside any section");
    }
    const std::string key = ini_trim(line.substr(0, eq));
    const std::string value = ini_trim(line.substr(eq + 1));
    if (key.empty()) {
      throw data_error(source + ":" + std::to_string(line_no) + ": empty key");
    }
    if (!sections.back().entries.emplace(key, std::make_pair(value, line_no)).second) {
      throw data_error(source + ":" + std::to_string(line_no) + ": duplicate key '" + key + "'");
    }
  }
  return sections;
}

inline double require_number(const IniSection& sec, const std::string& key,
                             const std::string& source) {
  const auto it = sec.entries.find(key);
  if (it == sec.entries.end()) {
    throw data_error(source + ": section [" + sec.name + "]: missing required key '" + key + "'");
  }
  char* end = nullptr;
  const std::string& text = it->second.first;
  const double v = std::strtod(text.c_str(), &end);
  if (end != text.c_str() + text.size() || text.empty() || !std::isfinite(v)) {
    throw data_error(source + ":" + std::to_string(it->second.second) + ": key '" + key +
                     "': not a number: '" + text + "'");
  }
  return v;
}

inline std::vector<OperatingZone> parse_zones(const IniSection& sec, const std::string& source) {
  const auto it = sec.entries.find("zones");
  if (it == sec.entries.end()) {
    throw data_error(source + ": section [" + sec.name + "]: missing required key 'zones'");
  }
  std::vector<OperatingZone> zones;
  std::istringstream stream(it->second.first);
  std::string item;
  while (stream >> item) {
    if (!item.empty() && item.back() == ',') item.pop_back();
    if (item.empty()) continue;
    const std::size_t colon = item.find(':');
    OperatingZone zone;
    char* end = nullptr;
    bool ok = colon != std::string::npos;
    if (ok) {
      const std::string lo = item.substr(0, colon), hi = item.substr(colon + 1);
      zone.p_min = std::strtod(lo.c_str(), &end);
      ok = end == lo.c_str() + lo.size() && !lo.empty();
      if (ok) {
        zone.p_max = std::strtod(hi.c_str(), &end);
        ok = end == hi.c_str() + hi.size() && !hi.empty();
      }
    }
    if (!ok) {
      throw data_error(source + ":" + std::to_string(it->second.second) +
                       ": key 'zones': expected 'min:max' pairs in GW, got '" + item + "'");
    }
    zones.push_back(zone);
  }
  return zones;
}

}  // namespace detail

/// Loads an instance from the INI-style unit file. Grammar:
///
///   [instance]
///   horizon = 24              # one-hour time slots
///
///   [unit 1]                  # one section per unit, any [unit*] name
///   a = 1                     # quadratic fuel cost, EUR/GW^2
///   b = 0.4                   # linear fuel cost, EUR/GW
///   c = 0.3                   # commitment cost, EUR per on-hour
///   startup_cost = 0.9        # EUR per switch-on
///   shutdown_cost = 0.4       # EUR per switch-off
///   ramp_down = 7             # max decrease, GW/h
///   ramp_up = 7               # max increase, GW/h
///   min_up = 3                # hours
///   min_down = 3              # hours
///   zones = 7:13.5 13.8:14.5  # ascending GW bands, space separated
///
/// '#' and ';' start comments. Errors name the file, line and offending key.
inline UcInstance load_units(std::istream& in, const std::string& source) {
  UcInstance inst;
  bool horizon_seen = false;
  for (const auto& sec : detail::parse_ini(in, source)) {
    if (sec.name == "instance") {
      const double h = detail::require_number(sec, "horizon", source);
      if (h != std::floor(h) || h < 2.0 || h > 1000.0) {
        throw data_error(source + ": key 'horizon': must be an integer in [2, 1000]");
      }
      inst.horizon = static_cast<int>(h);
      horizon_seen = true;
      continue;
    }
    if (sec.name.rfind("unit", 0) != 0) {
      throw data_error(source + ": unknown section [" + sec.name +
                       "] (expected [instance] or [unit ...])");
    }
    GenUnit u;
    u.cost_quad = detail::require_number(sec, "a", source);
    u.cost_lin = detail::require_number(sec, "b", source);
    u.cost_commit = detail::require_number(sec, "c", source);
    u.startup_cost = detail::require_number(sec, "startup_cost", source);
    u.shutdown_cost = detail::require_number(sec, "shutdown_cost", source);
    u.ramp_down = detail::require_number(sec, "ramp_down", source);
    u.ramp_up = detail::require_number(sec, "ramp_up", source);
    u.min_up = static_cast<int>(detail::require_number(sec, "min_up", source));
    u.min_down = static_cast<int>(detail::require_number(sec, "min_down", source));
    u.zones = detail::parse_zones(sec, source);
    u.validate(source + ": section [" + sec.name + "]");
    inst.units.push_back(std::move(u));
  }
  if (!horizon_seen) {
    throw data_error(source + ": missing [instance] section with key 'horizon'");
  }
  inst.validate();
  return inst;
}

inline UcInstance load_units_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw data_error("cannot open '" + path + "' for reading");
  return load_units(in, path);
}

}  // namespace scert::ucp

#endif  // SCERT_UCP_GENERATION_UNIT_HPP_
