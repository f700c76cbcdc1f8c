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
#include <cmath>
#include <concepts>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <utility>

#include <boost/math/tools/minima.hpp>

#include "iup/params.hpp"

/// Closed-form model of the thermally seeded nonlinear interferometer: the
/// visible-mode photon number, the fringe visibility, and its sensitivities.
namespace iup {

namespace detail {

/// N_v as a function of t = cos(kappa) and cos(phi).
inline double n_visible_t(double xi, double t, double cos_phi, double n_i, double n_c) {
  const double sh = std::sinh(xi);
  const double ch2 = std::cosh(xi) * std::cosh(xi);
  const double seeded = (n_i + 1.0) * ch2 * (t * t + 1.0 + 2.0 * t * cos_phi);
  const double injected = (n_c + 1.0) * (1.0 - t * t);
  return std::max(0.0, sh * sh * (seeded + injected));
}

/// Fringe visibility in terms of t = cos(kappa). This is the ratio formula
/// itself; at xi = 0 it returns the xi -> 0 limit, and callers apply the
/// no-fringe convention.
inline double visibility_t(double t, double n_i, double n_c, double xi) {
  const double a = (n_i + 1.0) * std::cosh(xi) * std::cosh(xi);
  const double b = n_c + 1.0;
  return 2.0 * a * t / (a * (1.0 + t * t) + b * (1.0 - t * t));
}

}  // namespace detail

/// Mean visible-mode photon number
///   N_v = sinh^2(xi) [ (n_i+1) cosh^2(xi) (t^2 + 1 + 2 t cos(phi)) + (n_c+1)(1 - t^2) ]
/// with t = cos(kappa).
inline double n_visible(const InterferometerParams& p) {
  p.validate();
  return detail::n_visible_t(p.xi, transmission_amplitude(p.kappa), std::cos(p.phi), p.n_th_i,
                             p.n_th_c);
}

struct VisibilityResult {
  double visibility = 0.0;
  double n_v_max = 0.0;
  double n_v_min = 0.0;
  double phi_max = 0.0;
  double phi_min = 0.0;
  /// No fringes: N_v does not depend on phi (xi = 0, or t = 0 for the scan).
  bool degenerate = false;
};

inline double fringe_visibility(double n_max, double n_min) {
  const double sum = n_max + n_min;
  return sum > 0.0 ? (n_max - n_min) / sum : 0.0;
}

/// Visibility with the extrema taken at phi = 0 (maximum) and phi = pi
/// (minimum). The input phi is ignored.
inline VisibilityResult visibility_closed_form(const InterferometerParams& p) {
  p.validate();
  const double t = transmission_amplitude(p.kappa);
  VisibilityResult r;
  r.phi_max = 0.0;
  r.phi_min = constants::pi;
  r.n_v_max = detail::n_visible_t(p.xi, t, 1.0, p.n_th_i, p.n_th_c);
  r.n_v_min = detail::n_visible_t(p.xi, t, -1.0, p.n_th_i, p.n_th_c);
  if (p.xi == 0.0) {
    r.degenerate = true;
    r.visibility = 0.0;
    return r;
  }
  r.visibility = detail::visibility_t(t, p.n_th_i, p.n_th_c, p.xi);
  return r;
}

inline double wrap_angle(double phi) {
  const double two_pi = 2.0 * constants::pi;
  double w = std::fmod(phi, two_pi);
  if (w < 0.0) w += two_pi;
  return w >= two_pi ? 0.0 : w;
}

/// Distance between two angles on the circle.
inline double angular_distance(double a, double b) {
  const double d = wrap_angle(a - b);
  return std::min(d, 2.0 * constants::pi - d);
}

inline constexpr std::size_t default_scan_points = 256;

/// Visibility from a numerical search for the extrema of `n_of_phi` over one
/// period: a uniform scan of [0, 2 pi) followed by Brent refinement in the
/// two cells around the best grid points.
template <std::invocable<double> Fn>
VisibilityResult visibility_by_scan(Fn&& n_of_phi, std::size_t grid_points = default_scan_points) {
  if (grid_points < 64) throw std::domain_error("phase scan needs at least 64 points");
  const double step = 2.0 * constants::pi / static_cast<double>(grid_points);
  std::size_t k_max = 0;
  std::size_t k_min = 0;
  double f_max = -std::numeric_limits<double>::infinity();
  double f_min = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < grid_points; ++k) {
    const double f = n_of_phi(step * static_cast<double>(k));
    if (f > f_max) {
      f_max = f;
      k_max = k;
    }
    if (f < f_min) {
      f_min = f;
      k_min = k;
    }
  }

  VisibilityResult r;
  if (!(f_max > 0.0) || f_max - f_min <= 64.0 * std::numeric_limits<double>::epsilon() * f_max) {
    r.degenerate = true;
    r.n_v_max = f_max;
    r.n_v_min = f_min;
    r.phi_max = step * static_cast<double>(k_max);
    r.phi_min = step * static_cast<double>(k_min);
    return r;
  }

  constexpr int bits = std::numeric_limits<double>::digits / 2;
  const double centre_max = step * static_cast<double>(k_max);
  const auto best_max = boost::math::tools::brent_find_minima(
      [&](double phi) { return -n_of_phi(phi); }, centre_max - step, centre_max + step, bits);
  const double centre_min = step * static_cast<double>(k_min);
  const auto best_min = boost::math::tools::brent_find_minima(
      [&](double phi) { return n_of_phi(phi); }, centre_min - step, centre_min + step, bits);

  r.phi_max = wrap_angle(best_max.first);
  r.n_v_max = std::max(-best_max.second, f_max);
  r.phi_min = wrap_angle(best_min.first);
  r.n_v_min = std::min(best_min.second, f_min);
  r.visibility = fringe_visibility(r.n_v_max, r.n_v_min);
  return r;
}

/// Scan of the closed-form N_v over phi at the given operating point.
inline VisibilityResult visibility_by_scan(const InterferometerParams& p,
                                           std::size_t grid_points = default_scan_points) {
  p.validate();
  const double t = transmission_amplitude(p.kappa);
  return visibility_by_scan(
      [&](double phi) { return detail::n_visible_t(p.xi, t, std::cos(phi), p.n_th_i, p.n_th_c); },
      grid_points);
}

/// Finite-difference sensitivities of the visibility with t = cos(kappa).
struct VisibilityPartials {
  double d_t = 0.0;
  double d_n_c = 0.0;
  double d_n_i = 0.0;
  double d_xi = 0.0;
  /// Derivative along n_i = n_c (both occupations raised together).
  double d_uniform = 0.0;

  bool one_sided_t = false;
  bool one_sided_n_c = false;
  bool one_sided_n_i = false;
  bool one_sided_xi = false;

  /// The expected pattern (+, -, +, +) for (t, n_c, n_i, xi).
  bool expected_signs() const { return d_t > 0.0 && d_n_c < 0.0 && d_n_i > 0.0 && d_xi > 0.0; }
};

inline constexpr double partials_relative_step = 1e-6;

namespace detail {

struct Derivative {
  double value;
  bool one_sided;
};

/// Central difference with step 1e-6 * max(|x|, 1); falls back to a one-sided
/// difference when a central stencil would leave [lo, hi].
template <class Fn>
Derivative finite_difference(Fn&& f, double x, double lo, double hi) {
  const double h = partials_relative_step * std::max(std::abs(x), 1.0);
  if (x - h >= lo && x + h <= hi) return {(f(x + h) - f(x - h)) / (2.0 * h), false};
  if (x + h <= hi) return {(f(x + h) - f(x)) / h, true};
  return {(f(x) - f(x - h)) / h, true};
}

}  // namespace detail

inline VisibilityPartials visibility_partials(const InterferometerParams& p) {
  p.validate();
  const double t = transmission_amplitude(p.kappa);
  const double inf = std::numeric_limits<double>::infinity();
  VisibilityPartials out;

  const auto dt = detail::finite_difference(
      [&](double x) { return detail::visibility_t(x, p.n_th_i, p.n_th_c, p.xi); }, t, 0.0, 1.0);
  const auto dnc = detail::finite_difference(
      [&](double x) { return detail::visibility_t(t, p.n_th_i, x, p.xi); }, p.n_th_c, 0.0, inf);
  const auto dni = detail::finite_difference(
      [&](double x) { return detail::visibility_t(t, x, p.n_th_c, p.xi); }, p.n_th_i, 0.0, inf);
  const auto dxi = detail::finite_difference(
      [&](double x) { return detail::visibility_t(t, p.n_th_i, p.n_th_c, x); }, p.xi, 0.0, inf);
  const double lo_shift = -std::min(p.n_th_i, p.n_th_c);
  const auto duni = detail::finite_difference(
      [&](double s) { return detail::visibility_t(t, p.n_th_i + s, p.n_th_c + s, p.xi); }, 0.0,
      lo_shift, inf);

  out.d_t = dt.value;
  out.one_sided_t = dt.one_sided;
  out.d_n_c = dnc.value;
  out.one_sided_n_c = dnc.one_sided;
  out.d_n_i = dni.value;
  out.one_sided_n_i = dni.one_sided;
  out.d_xi = dxi.value;
  out.one_sided_xi = dxi.one_sided;
  out.d_uniform = duni.value;
  return out;
}

}  // namespace iup
