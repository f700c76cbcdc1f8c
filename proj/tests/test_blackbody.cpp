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

#include <cmath>
#include <stdexcept>
#include <vector>

#include <gtest/gtest.h>

#include "iup/blackbody.hpp"

namespace {

using namespace iup;

double occupation(double lambda, double kelvin) {
  return mean_occupation(ThermalEnvironment(SpectralPoint::from_wavelength(lambda), kelvin));
}

double density(double lambda, double kelvin) {
  return planck_energy_density(ThermalEnvironment(SpectralPoint::from_wavelength(lambda), kelvin));
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

TEST(MeanOccupation, QuotedRoomTemperatureValues) {
  EXPECT_LT(rel(occupation(1e-6, 300.0), 1.4e-21), 0.10);
  EXPECT_LT(rel(occupation(8e-6, 300.0), 2.5e-3), 0.05);
}

// 30-digit evaluations of 1/(exp(hbar*omega/k_B T) - 1).
TEST(MeanOccupation, MatchesHighPrecisionReference) {
  EXPECT_LT(rel(occupation(1e-6, 300.0), 1.48446984643288724e-21), 1e-12);
  EXPECT_LT(rel(occupation(8e-6, 300.0), 2.49763965639608177e-3), 1e-12);
  EXPECT_LT(rel(occupation(8e-6, 750.0), 9.99927194212418509e-2), 1e-12);
  EXPECT_LT(rel(occupation(600e-9, 3000.0), 3.37864014273285785e-4), 1e-12);
}

TEST(MeanOccupation, ThresholdLandmarksCoincide) {
  const double hot = occupation(8e-6, 750.0);
  const double long_wave = occupation(20e-6, 300.0);
  EXPECT_LT(rel(hot, 0.1), 0.05);
  EXPECT_LT(rel(long_wave, 0.1), 0.05);
  EXPECT_LT(rel(hot, long_wave), 1e-12);
}

TEST(MeanOccupation, IncandescentBulbIsStillNearlyEmpty) {
  const double n = occupation(600e-9, 3000.0);
  EXPECT_GT(n, 1e-4);
  EXPECT_LT(n, 1e-3);
}

TEST(MeanOccupation, MonotoneOnGrid) {
  std::vector<double> temps, lambdas;
  for (int k = 0; k < 20; ++k) {
    temps.push_back(50.0 + 100.0 * k);
    lambdas.push_back(0.5e-6 * std::pow(1.3, k));
  }
  for (double lambda : lambdas) {
    for (std::size_t k = 1; k < temps.size(); ++k) {
      EXPECT_GT(occupation(lambda, temps[k]), occupation(lambda, temps[k - 1]))
          << lambda << " " << temps[k];
    }
  }
  // Longer wavelength = lower omega = higher occupation.
  for (double kelvin : temps) {
    for (std::size_t k = 1; k < lambdas.size(); ++k) {
      EXPECT_GT(occupation(lambdas[k], kelvin), occupation(lambdas[k - 1], kelvin));
    }
  }
}

TEST(MeanOccupation, UnderflowsToExactZero) {
  const double n = occupation(1e-9, 1.0);
  EXPECT_EQ(n, 0.0);
  EXPECT_FALSE(std::isnan(density(1e-9, 1.0)));
  EXPECT_THROW(ThermalEnvironment(SpectralPoint::from_wavelength(8e-6), 0.0), std::domain_error);
  EXPECT_THROW(ThermalEnvironment(SpectralPoint::from_wavelength(8e-6), -3.0), std::domain_error);
}

TEST(BoseEinstein, VacuumLimit) {
  EXPECT_EQ(bose_einstein_pmf(0.0, 0), 1.0);
  for (long n = 1; n < 10; ++n) EXPECT_EQ(bose_einstein_pmf(0.0, n), 0.0);
}

TEST(BoseEinstein, UnitOccupationIsGeometricHalf) {
  for (long n = 0; n < 20; ++n) {
    EXPECT_DOUBLE_EQ(bose_einstein_pmf(1.0, n), std::ldexp(1.0, -static_cast<int>(n + 1)));
  }
}

TEST(BoseEinstein, NormalisedWithMeanNth) {
  for (double n_th : {0.05, 0.2, 0.7}) {
    double total = 0.0;
    double mean = 0.0;
    for (long n = 0; n < 200; ++n) {
      const double p = bose_einstein_pmf(n_th, n);
      total += p;
      mean += static_cast<double>(n) * p;
    }
    EXPECT_NEAR(total, 1.0, 1e-12);
    EXPECT_NEAR(mean, n_th, 1e-10);
  }
  double mean = 0.0;
  for (long n = 0; n <= 60; ++n) mean += static_cast<double>(n) * bose_einstein_pmf(0.2, n);
  EXPECT_NEAR(mean, 0.2, 1e-10);
}

TEST(BoseEinstein, MatchesBoltzmannWeights) {
  // p_n = exp(-n x) / sum_m exp(-m x) with n_th = 1/(e^x - 1).
  const double x = 0.9;
  const double n_th = 1.0 / std::expm1(x);
  const double z = 1.0 / (1.0 - std::exp(-x));
  for (long n = 0; n < 15; ++n) {
    EXPECT_NEAR(bose_einstein_pmf(n_th, n), std::exp(-x * static_cast<double>(n)) / z, 1e-14);
  }
}

TEST(BoseEinstein, RejectsNegative) {
  EXPECT_THROW(bose_einstein_pmf(-0.1, 0), std::domain_error);
  EXPECT_THROW(bose_einstein_pmf(0.1, -1), std::domain_error);
}

TEST(EnergyDensity, QuotedRatioBetweenEightAndOneMicron) {
  const double ratio = density(8e-6, 300.0) / density(1e-6, 300.0);
  EXPECT_LT(rel(ratio, 3.5e15), 0.15);
  EXPECT_LT(rel(ratio, 3.28615799480244972e15), 1e-11);
  const double factorised = occupation(8e-6, 300.0) / occupation(1e-6, 300.0) *
                            std::pow(wavelength_to_omega(8e-6) / wavelength_to_omega(1e-6), 3);
  EXPECT_LT(rel(ratio, factorised), 1e-12);
}

TEST(EnergyDensity, SingleInteriorMaximumAndDecay) {
  std::vector<double> values;
  for (double lambda = 0.1e-6; lambda < 1e-3; lambda *= 1.02) values.push_back(density(lambda, 300.0));
  std::size_t peak = 0;
  for (std::size_t k = 0; k < values.size(); ++k) {
    EXPECT_GE(values[k], 0.0);
    if (values[k] > values[peak]) peak = k;
  }
  ASSERT_GT(peak, 0u);
  ASSERT_LT(peak, values.size() - 1);
  for (std::size_t k = 1; k <= peak; ++k) EXPECT_GT(values[k], values[k - 1]);
  for (std::size_t k = peak + 1; k < values.size(); ++k) EXPECT_LT(values[k], values[k - 1]);
  EXPECT_LT(density(0.1e-6, 300.0), 1e-30 * values[peak]);
}

TEST(Wien, PeakWavelength) {
  EXPECT_NEAR(wien_peak_wavelength(300.0), 9.65923985e-6, 1e-14);
  EXPECT_NEAR(wien_peak_wavelength(300.0), 10e-6, 0.5e-6);
  EXPECT_DOUBLE_EQ(wien_peak_wavelength(600.0), 0.5 * wien_peak_wavelength(300.0));
  EXPECT_NEAR(wien_peak_wavelength(5772.0), 5.02039493243243243e-7, 1e-15);
  EXPECT_THROW(wien_peak_wavelength(0.0), std::domain_error);
}

// Independent route: Planck radiance per unit wavenumber,
// L = 2 h c^2 nu^3 / (exp(h c nu / k T) - 1), integrated by composite Simpson.
struct SimpsonBand {
  double power;
  double flux;
};

SimpsonBand simpson_band(double kelvin, double lo_per_cm, double hi_per_cm, double area) {
  const int n = 4000;
  const double a = lo_per_cm * 100.0;
  const double b = hi_per_cm * 100.0;
  const double step = (b - a) / n;
  double power = 0.0;
  double flux = 0.0;
  for (int k = 0; k <= n; ++k) {
    const double nu = a + k * step;
    const double w = (k == 0 || k == n) ? 1.0 : (k % 2 ? 4.0 : 2.0);
    const double radiance = 2.0 * constants::h * constants::c * constants::c * nu * nu * nu /
                            std::expm1(constants::h * constants::c * nu / (constants::k_B * kelvin));
    power += w * radiance;
    flux += w * radiance / (constants::h * constants::c * nu);
  }
  const double etendue = constants::pi * area;
  return {etendue * power * step / 3.0, etendue * flux * step / 3.0};
}

TEST(DetectorBackground, QuotedDetectorExample) {
  const auto bg = detector_band_background(300.0, {1176.0, 1234.0}, 1e-6);
  EXPECT_LT(rel(bg.power, 11.7e-6), 0.10);
  EXPECT_LT(rel(bg.photon_flux, 5e14), 0.10);
  // 30-digit adaptive quadrature of the same model.
  EXPECT_LT(rel(bg.power, 1.17812634632241922e-5), 1e-6);
  EXPECT_LT(rel(bg.photon_flux, 4.92545472403184310e14), 1e-6);
  const auto oracle = simpson_band(300.0, 1176.0, 1234.0, 1e-6);
  EXPECT_LT(rel(bg.power, oracle.power), 1e-8);
  EXPECT_LT(rel(bg.photon_flux, oracle.flux), 1e-8);
}

TEST(DetectorBackground, LinearInArea) {
  const auto one = detector_band_background(300.0, {1176.0, 1234.0}, 1e-6);
  const auto two = detector_band_background(300.0, {1176.0, 1234.0}, 2e-6);
  EXPECT_EQ(two.power, 2.0 * one.power);
  EXPECT_EQ(two.photon_flux, 2.0 * one.photon_flux);
}

TEST(DetectorBackground, RejectsBadInputs) {
  EXPECT_THROW(detector_band_background(300.0, {1234.0, 1176.0}, 1e-6), std::domain_error);
  EXPECT_THROW(detector_band_background(300.0, {1176.0, 1234.0}, 0.0), std::domain_error);
  EXPECT_THROW(detector_band_background(0.0, {1176.0, 1234.0}, 1e-6), std::domain_error);
}

}  // namespace
