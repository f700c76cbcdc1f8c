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

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <ostream>
#include <string>

#include "iup/sweeps.hpp"

namespace iup::plot {

/// Static SVG line plot of a sweep: one polyline per engine column.
inline void write_svg(const sweeps::SweepResult& result, std::ostream& out) {
  constexpr double width = 640.0;
  constexpr double height = 420.0;
  constexpr double left = 80.0;
  constexpr double right = 20.0;
  constexpr double top = 30.0;
  constexpr double bottom = 60.0;
  constexpr std::array<const char*, 3> colours{"#1f77b4", "#d62728", "#2ca02c"};
  constexpr std::array<const char*, 3> dashes{"none", "6,4", "2,3"};

  const auto& rows = result.rows;
  const auto& spec = result.spec;
  double x_lo = std::numeric_limits<double>::infinity();
  double x_hi = -x_lo;
  double y_lo = x_lo;
  double y_hi = -x_lo;
  for (const auto& row : rows) {
    x_lo = std::min(x_lo, row.x);
    x_hi = std::max(x_hi, row.x);
    for (double v : row.values) {
      y_lo = std::min(y_lo, v);
      y_hi = std::max(y_hi, v);
    }
  }
  if (rows.empty()) x_lo = x_hi = y_lo = y_hi = 0.0;
  if (y_hi == y_lo) {
    y_hi += 0.5;
    y_lo -= 0.5;
  }
  if (x_hi == x_lo) x_hi += 1.0;
  const bool log_x = spec.range.scale == sweeps::Scale::log && x_lo > 0.0;

  auto px = [&](double x) {
    const double f = log_x ? (std::log(x) - std::log(x_lo)) / (std::log(x_hi) - std::log(x_lo))
                           : (x - x_lo) / (x_hi - x_lo);
    return left + f * (width - left - right);
  };
  auto py = [&](double y) {
    return height - bottom - (y - y_lo) / (y_hi - y_lo) * (height - top - bottom);
  };

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<g stroke=\"black\" stroke-width=\"1\">\n"
      << "<line x1=\"" << left << "\" y1=\"" << height - bottom << "\" x2=\"" << width - right
      << "\" y2=\"" << height - bottom << "\"/>\n"
      << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\""
      << height - bottom << "\"/>\n</g>\n";

  out << "<g font-family=\"sans-serif\" font-size=\"12\">\n";
  out << "<text x=\"" << left << "\" y=\"" << height - bottom + 18 << "\">"
      << sweeps::format_double(x_lo) << "</text>\n";
  out << "<text x=\"" << width - right << "\" y=\"" << height - bottom + 18
      << "\" text-anchor=\"end\">" << sweeps::format_double(x_hi) << "</text>\n";
  out << "<text x=\"" << left - 6 << "\" y=\"" << height - bottom << "\" text-anchor=\"end\">"
      << sweeps::format_double(y_lo) << "</text>\n";
  out << "<text x=\"" << left - 6 << "\" y=\"" << top + 4 << "\" text-anchor=\"end\">"
      << sweeps::format_double(y_hi) << "</text>\n";
  out << "<text x=\"" << (left + width - right) / 2 << "\" y=\"" << height - 15
      << "\" text-anchor=\"middle\">" << sweeps::column_name(spec.param) << "</text>\n";
  out << "<text x=\"" << left << "\" y=\"" << top - 10 << "\">" << sweeps::to_string(spec.target)
      << ": " << sweeps::to_string(spec.quantity) << "</text>\n";
  out << "</g>\n";

  for (std::size_t e = 0; e < spec.engines.size(); ++e) {
    out << "<polyline fill=\"none\" stroke=\"" << colours[e % colours.size()]
        << "\" stroke-width=\"1.5\" stroke-dasharray=\"" << dashes[e % dashes.size()]
        << "\" points=\"";
    for (std::size_t k = 0; k < rows.size(); ++k) {
      if (k) out << ' ';
      out << px(rows[k].x) << ',' << py(rows[k].values[e]);
    }
    out << "\"/>\n";
    out << "<text font-family=\"sans-serif\" font-size=\"12\" x=\"" << width - right - 90
        << "\" y=\"" << top + 16.0 * static_cast<double>(e + 1) << "\" fill=\""
        << colours[e % colours.size()] << "\">" << sweeps::to_string(spec.engines[e])
        << "</text>\n";
  }
  out << "</svg>\n";
}

}  // namespace iup::plot
