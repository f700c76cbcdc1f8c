// Copyright 2026 The iup-thermal Authors
//
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

#pragma once

#include <charconv>
#include <cmath>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "iup/constants.hpp"

/// Parsing of unit-bearing command-line values such as "8um", "300K",
/// "1176cm-1:1234cm-1", "1mm2" or "0.05pi". Results are SI (radians for
/// angles, cm^-1 for spectroscopic wavenumbers). Dimensioned quantities must
/// carry a suffix.
namespace iup::units {

/// Bad command-line value; the message names the offending flag.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Quantity {
  double value;
  std::string suffix;
};

inline std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

/// Splits "<number><suffix>". An empty number is allowed only when
/// `allow_bare_suffix` is set (so "pi" reads as 1 pi).
inline Quantity split(std::string_view flag, std::string_view text, bool allow_bare_suffix = false) {
  const std::string s = trim(text);
  double value = 0.0;
  const char* begin = s.data();
  const char* end = s.data() + s.size();
  const auto res = std::from_chars(begin, end, value);
  if (res.ec == std::errc::result_out_of_range) {
    throw UsageError(std::string(flag) + ": value out of range in '" + s + "'");
  }
  if (res.ec != std::errc()) {
    if (!allow_bare_suffix || s.empty()) {
      throw UsageError(std::string(flag) + ": expected a number in '" + s + "'");
    }
    return {1.0, s};
  }
  if (!std::isfinite(value)) throw UsageError(std::string(flag) + ": value must be finite");
  return {value, trim(std::string_view(res.ptr, static_cast<std::size_t>(end - res.ptr)))};
}

namespace detail {

inline double scaled(std::string_view flag, const Quantity& q,
                     std::initializer_list<std::pair<const char*, double>> table,
                     const char* expected) {
  if (q.suffix.empty()) {
    throw UsageError(std::string(flag) + ": missing unit suffix (expected " + expected + ")");
  }
  for (const auto& [name, factor] : table) {
    if (q.suffix == name) return q.value * factor;
  }
  throw UsageError(std::string(flag) + ": unknown unit '" + q.suffix + "' (expected " + expected + ")");
}

inline double positive(std::string_view flag, double v) {
  if (!(v > 0.0)) throw UsageError(std::string(flag) + ": value must be positive");
  return v;
}

}  // namespace detail

/// Metres.
inline double parse_length(std::string_view flag, std::string_view text) {
  const auto q = split(flag, text);
  return detail::positive(
      flag, detail::scaled(flag, q,
                           {{"m", 1.0}, {"cm", 1e-2}, {"mm", 1e-3}, {"um", 1e-6},
                            {"\xC2\xB5m", 1e-6}, {"\xCE\xBCm", 1e-6}, {"nm", 1e-9}},
                           "m, cm, mm, um or nm"));
}

/// Kelvin.
inline double parse_temperature(std::string_view flag, std::string_view text) {
  const auto q = split(flag, text);
  return detail::positive(flag, detail::scaled(flag, q, {{"K", 1.0}}, "K"));
}

/// Spectroscopic wavenumber, cm^-1.
inline double parse_wavenumber(std::string_view flag, std::string_view text) {
  const auto q = split(flag, text);
  return detail::positive(
      flag, detail::scaled(flag, q, {{"cm-1", 1.0}, {"cm^-1", 1.0}, {"/cm", 1.0}, {"m-1", 1e-2}},
                           "cm-1"));
}

/// "<low>:<high>" in wavenumber units.
inline WavenumberBand parse_band(std::string_view flag, std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) {
    throw UsageError(std::string(flag) + ": expected <low>:<high>, e.g. 1176cm-1:1234cm-1");
  }
  WavenumberBand band{parse_wavenumber(flag, text.substr(0, colon)),
                      parse_wavenumber(flag, text.substr(colon + 1))};
  if (!(band.low < band.high)) {
    throw UsageError(std::string(flag) + ": band must satisfy low < high");
  }
  return band;
}

/// Square metres.
inline double parse_area(std::string_view flag, std::string_view text) {
  const auto q = split(flag, text);
  return detail::positive(
      flag, detail::scaled(flag, q,
                           {{"m2", 1.0}, {"m^2", 1.0}, {"cm2", 1e-4}, {"cm^2", 1e-4},
                            {"mm2", 1e-6}, {"mm^2", 1e-6}, {"um2", 1e-12}, {"um^2", 1e-12}},
                           "m2, cm2, mm2 or um2"));
}

/// Angular frequency, rad/s.
inline double parse_omega(std::string_view flag, std::string_view text) {
  const auto q = split(flag, text);
  return detail::positive(flag, detail::scaled(flag, q, {{"rad/s", 1.0}, {"/s", 1.0}}, "rad/s"));
}

/// Radians. Accepts "<x>pi", "pi", "<x>rad" and "<x>deg".
inline double parse_angle(std::string_view flag, std::string_view text) {
  const auto q = split(flag, text, true);
  return detail::scaled(flag, q, {{"pi", constants::pi}, {"rad", 1.0}, {"deg", constants::pi / 180.0}},
                        "pi, rad or deg");
}

/// Plain number, no suffix.
inline double parse_number(std::string_view flag, std::string_view text) {
  const auto q = split(flag, text);
  if (!q.suffix.empty()) {
    throw UsageError(std::string(flag) + ": unexpected suffix '" + q.suffix + "'");
  }
  return q.value;
}

inline std::vector<std::string> split_list(std::string_view text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = text.find(',', start);
    out.push_back(trim(text.substr(start, comma == std::string_view::npos ? std::string_view::npos
                                                                          : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

/// Comma-separated list, each element parsed by `parse(flag, piece)`.
template <class Parse>
std::vector<double> parse_list(std::string_view flag, std::string_view text, Parse&& parse) {
  std::vector<double> out;
  for (const auto& piece : split_list(text)) out.push_back(parse(flag, piece));
  return out;
}

}  // namespace iup::units
