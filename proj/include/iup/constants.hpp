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

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>

/// Physical constants (exact SI values) and the few unit conversions the
/// library needs. Angular frequency in rad/s is the canonical spectral unit;
/// wavelengths and wavenumbers only appear at interface boundaries.
namespace iup {

namespace constants {

inline constexpr double pi = std::numbers::pi;
inline constexpr double h = 6.62607015e-34;     // J s
inline constexpr double hbar = h / (2.0 * pi);  // J s
inline constexpr double k_B = 1.380649e-23;     // J / K
inline constexpr double c = 2.99792458e8;       // m / s
/// Wien displacement constant, per-unit-wavelength peak (m K).
inline constexpr double wien_b = 2.897771955e-3;

}  // namespace constants

namespace detail {

inline void require_positive(double value, const char* what) {
  if (!std::isfinite(value) || !(value > 0.0)) {
    throw std::domain_error(std::string(what) + " must be finite and positive");
  }
}

}  // namespace detail

inline double wavelength_to_omega(double wavelength_m) {
  detail::require_positive(wavelength_m, "wavelength");
  return 2.0 * constants::pi * constants::c / wavelength_m;
}

inline double omega_to_wavelength(double omega) {
  detail::require_positive(omega, "angular frequency");
  return 2.0 * constants::pi * constants::c / omega;
}

/// Spectroscopic wavenumber in cm^-1 to wavelength in m.
inline double wavenumber_to_wavelength(double wavenumber_per_cm) {
  detail::require_positive(wavenumber_per_cm, "wavenumber");
  return 0.01 / wavenumber_per_cm;
}

inline double wavelength_to_wavenumber(double wavelength_m) {
  detail::require_positive(wavelength_m, "wavelength");
  return 0.01 / wavelength_m;
}

/// A point on the spectrum, stored as angular frequency.
class SpectralPoint {
 public:
  static SpectralPoint from_omega(double omega) {
    detail::require_positive(omega, "angular frequency");
    return SpectralPoint(omega);
  }
  static SpectralPoint from_wavelength(double wavelength_m) {
    return SpectralPoint(wavelength_to_omega(wavelength_m));
  }
  static SpectralPoint from_wavenumber(double wavenumber_per_cm) {
    return from_wavelength(wavenumber_to_wavelength(wavenumber_per_cm));
  }

  double omega() const { return omega_; }
  double wavelength() const { return omega_to_wavelength(omega_); }
  /// cm^-1
  double wavenumber() const { return wavelength_to_wavenumber(wavelength()); }

 private:
  explicit SpectralPoint(double omega) : omega_(omega) {}
  double omega_;
};

/// Wavenumber interval in cm^-1 with low < high.
struct WavenumberBand {
  double low;
  double high;
};

/// Returns (shortest, longest) wavelength in metres; the high wavenumber edge
/// maps to the short wavelength.
inline std::pair<double, double> wavenumber_band_to_wavelengths(const WavenumberBand& band) {
  detail::require_positive(band.low, "band lower wavenumber");
  detail::require_positive(band.high, "band upper wavenumber");
  if (!(band.low < band.high)) {
    throw std::domain_error("wavenumber band must satisfy low < high");
  }
  return {wavenumber_to_wavelength(band.high), wavenumber_to_wavelength(band.low)};
}

}  // namespace iup
