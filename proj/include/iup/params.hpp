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
#include <optional>
#include <stdexcept>
#include <string>

#include "iup/constants.hpp"

namespace iup {

/// Mode labels shared by the engines, in pipeline order.
namespace modes {
inline constexpr const char* idler = "i";
inline constexpr const char* visible = "v";
inline constexpr const char* seed = "i'";
}  // namespace modes

/// Gain above which the undepleted-pump picture is questionable. Results stay
/// exact within the model; callers get an advisory only.
inline constexpr double low_gain_limit = 0.2;

/// Operating point of the thermally seeded nonlinear interferometer.
///
/// Modes: i (IR, seeded with n_th_i), v (visible, vacuum) and i' (IR, seeded
/// with n_th_c, mixed into i on the beam splitter). Both crystals share xi.
struct InterferometerParams {
  double xi = 0.0;      // parametric gain
  double phi = 0.0;     // phase shift on mode i, radians
  double kappa = 0.0;   // beam-splitter angle, transmissivity cos^2(kappa)
  double n_th_i = 0.0;  // seed occupation of mode i
  double n_th_c = 0.0;  // seed occupation of mode i'

  void validate() const {
    if (!std::isfinite(xi) || !std::isfinite(phi) || !std::isfinite(kappa) ||
        !std::isfinite(n_th_i) || !std::isfinite(n_th_c)) {
      throw std::domain_error("interferometer parameters must be finite");
    }
    if (xi < 0.0) throw std::domain_error("xi must be non-negative");
    if (kappa < 0.0 || kappa > constants::pi / 2.0) {
      throw std::domain_error("kappa must lie in [0, pi/2]");
    }
    if (n_th_i < 0.0) throw std::domain_error("n_th_i must be non-negative");
    if (n_th_c < 0.0) throw std::domain_error("n_th_c must be non-negative");
  }

  std::optional<std::string> advisory() const {
    if (xi > low_gain_limit) {
      return "xi = " + std::to_string(xi) + " exceeds the low-gain regime (xi <= " +
             std::to_string(low_gain_limit) + "); undepleted-pump approximation is weak";
    }
    return std::nullopt;
  }
};

/// Beam-splitter amplitude transmission t = cos(kappa), written as
/// sin(pi/2 - kappa) so that t is exactly 0 at kappa = pi/2 and exactly 1 at 0.
inline double transmission_amplitude(double kappa) {
  return std::sin(constants::pi / 2.0 - kappa);
}

/// Inverse of the transmissivity tau = cos^2(kappa).
inline double kappa_from_transmissivity(double tau) {
  if (!std::isfinite(tau) || tau < 0.0 || tau > 1.0) {
    throw std::domain_error("transmissivity must lie in [0, 1]");
  }
  return std::acos(std::sqrt(tau));
}

}  // namespace iup
