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
#include <stdexcept>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "iup/constants.hpp"

namespace iup {

/// A spectral point paired with a black-body temperature.
struct ThermalEnvironment {
  SpectralPoint spectral;
  double temperature;  // K

  ThermalEnvironment(SpectralPoint point, double kelvin) : spectral(point), temperature(kelvin) {
    detail::require_positive(kelvin, "temperature");
  }
};

/// Above this value of hbar*omega/(k_B*T) the occupation is reported as
/// exactly zero; exp() overflows shortly after.
inline constexpr double occupation_exponent_cutoff = 700.0;

/// Bose-Einstein mean photon number 1/(exp(hbar*omega/k_B T) - 1).
inline double mean_occupation(const ThermalEnvironment& env) {
  const double x =
      constants::hbar * env.spectral.omega() / (constants::k_B * env.temperature);
  if (x > occupation_exponent_cutoff) return 0.0;
  return 1.0 / std::expm1(x);
}

/// Probability of n photons in a thermal mode with mean occupation n_th,
/// n_th^n / (n_th + 1)^(n + 1).
inline double bose_einstein_pmf(double n_th, long n) {
  if (!std::isfinite(n_th) || n_th < 0.0) {
    throw std::domain_error("mean occupation must be finite and non-negative");
  }
  if (n < 0) throw std::domain_error("photon number must be non-negative");
  const double ratio = n_th / (n_th + 1.0);
  return std::pow(ratio, static_cast<double>(n)) / (n_th + 1.0);
}

/// Spectral energy density per unit angular frequency, n * hbar*omega * g(omega)
/// with the plane-wave mode density g = omega^2 / (pi^2 c^3). Units J s / m^3.
inline double planck_energy_density(const ThermalEnvironment& env) {
  const double omega = env.spectral.omega();
  const double g = omega * omega / (constants::pi * constants::pi * constants::c *
                                    constants::c * constants::c);
  return mean_occupation(env) * constants::hbar * omega * g;
}

/// Peak of the per-unit-wavelength Planck spectrum, b / T (metres).
inline double wien_peak_wavelength(double temperature) {
  detail::require_positive(temperature, "temperature");
  return constants::wien_b / temperature;
}

struct BandBackground {
  double power;        // W
  double photon_flux;  // photons / s
};

/// Black-body background collected by a flat detector of the given area that
/// views a unity-emissivity Lambertian hemisphere (etendue pi*A), restricted
/// to a wavenumber band.
///
/// The band radiance is c*W/(4*pi) integrated over omega, so the collected
/// power is A*c/4 times the band-integrated energy density. The photon flux
/// divides the integrand by hbar*omega.
inline BandBackground detector_band_background(double temperature, const WavenumberBand& band,
                                               double area_m2) {
  detail::require_positive(temperature, "temperature");
  detail::require_positive(area_m2, "detector area");
  const auto [lambda_short, lambda_long] = wavenumber_band_to_wavelengths(band);
  const double omega_lo = wavelength_to_omega(lambda_long);
  const double omega_hi = wavelength_to_omega(lambda_short);

  auto density = [temperature](double omega) {
    return planck_energy_density(ThermalEnvironment(SpectralPoint::from_omega(omega), temperature));
  };
  auto photon_density = [&density](double omega) {
    return density(omega) / (constants::hbar * omega);
  };

  using Quadrature = boost::math::quadrature::gauss_kronrod<double, 31>;
  constexpr double tol = 1e-10;
  const double energy = Quadrature::integrate(density, omega_lo, omega_hi, 15, tol);
  const double photons = Quadrature::integrate(photon_density, omega_lo, omega_hi, 15, tol);

  const double geometry = area_m2 * constants::c / 4.0;
  return {geometry * energy, geometry * photons};
}

}  // namespace iup
