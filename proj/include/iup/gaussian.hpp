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
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "iup/params.hpp"

/// Gaussian-state engine. Quadratures are ordered (x_1, p_1, x_2, p_2, ...)
/// with x = (a + a^dag)/sqrt(2), p = (a - a^dag)/(i sqrt(2)); the vacuum
/// covariance is I/2. Transforms act on the quadrature vector in the
/// Heisenberg picture, so a Schroedinger-picture element rho -> U rho U^dag
/// updates the covariance as cov -> S cov S^T.
namespace iup::gaussian {

using ModeLabels = std::vector<std::string>;

inline constexpr double symmetry_tolerance = 1e-12;
inline constexpr double uncertainty_tolerance = 1e-10;
inline constexpr double symplectic_tolerance = 1e-10;

/// Standard symplectic form for interleaved (x, p) ordering.
inline Eigen::MatrixXd symplectic_form(std::size_t mode_count) {
  const auto n = static_cast<Eigen::Index>(2 * mode_count);
  Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index k = 0; k < n; k += 2) {
    omega(k, k + 1) = 1.0;
    omega(k + 1, k) = -1.0;
  }
  return omega;
}

inline std::size_t index_of(const ModeLabels& labels, const std::string& label) {
  const auto it = std::find(labels.begin(), labels.end(), label);
  if (it == labels.end()) throw std::domain_error("unknown mode label '" + label + "'");
  return static_cast<std::size_t>(it - labels.begin());
}

class GaussianState {
 public:
  GaussianState(ModeLabels labels, Eigen::VectorXd mean, Eigen::MatrixXd cov)
      : labels_(std::move(labels)), mean_(std::move(mean)), cov_(std::move(cov)) {
    const auto n = static_cast<Eigen::Index>(2 * labels_.size());
    if (labels_.empty() || mean_.size() != n || cov_.rows() != n || cov_.cols() != n) {
      throw std::domain_error("Gaussian state dimensions do not match its mode labels");
    }
    for (std::size_t k = 0; k < labels_.size(); ++k) {
      if (std::count(labels_.begin(), labels_.end(), labels_[k]) != 1) {
        throw std::domain_error("duplicate mode label '" + labels_[k] + "'");
      }
    }
  }

  const ModeLabels& labels() const { return labels_; }
  const Eigen::VectorXd& mean() const { return mean_; }
  const Eigen::MatrixXd& cov() const { return cov_; }
  std::size_t mode_count() const { return labels_.size(); }
  std::size_t index_of(const std::string& label) const { return gaussian::index_of(labels_, label); }

 private:
  ModeLabels labels_;
  Eigen::VectorXd mean_;
  Eigen::MatrixXd cov_;
};

/// Smallest eigenvalue of cov + (i/2) Omega; non-negative for physical states.
inline double uncertainty_margin(const GaussianState& state) {
  const Eigen::MatrixXcd m =
      state.cov().cast<std::complex<double>>() +
      std::complex<double>(0.0, 0.5) * symplectic_form(state.mode_count()).cast<std::complex<double>>();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

/// Throws std::logic_error when the covariance is asymmetric or violates the
/// uncertainty relation.
inline void check_physical(const GaussianState& state) {
  const double asym = (state.cov() - state.cov().transpose()).cwiseAbs().maxCoeff();
  if (asym > symmetry_tolerance) {
    throw std::logic_error("covariance matrix lost symmetry");
  }
  if (uncertainty_margin(state) < -uncertainty_tolerance) {
    throw std::logic_error("covariance matrix violates the uncertainty relation");
  }
}

inline GaussianState thermal_state(double n_th, const std::string& label = modes::idler) {
  if (!std::isfinite(n_th) || n_th < 0.0) {
    throw std::domain_error("thermal occupation must be finite and non-negative");
  }
  return GaussianState({label}, Eigen::VectorXd::Zero(2),
                       (n_th + 0.5) * Eigen::MatrixXd::Identity(2, 2));
}

inline GaussianState vacuum_state(const std::string& label) { return thermal_state(0.0, label); }

/// Product state; modes of `b` follow those of `a`.
inline GaussianState tensor(const GaussianState& a, const GaussianState& b) {
  ModeLabels labels = a.labels();
  labels.insert(labels.end(), b.labels().begin(), b.labels().end());
  const auto na = a.mean().size();
  const auto nb = b.mean().size();
  Eigen::VectorXd mean(na + nb);
  mean << a.mean(), b.mean();
  Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(na + nb, na + nb);
  cov.topLeftCorner(na, na) = a.cov();
  cov.bottomRightCorner(nb, nb) = b.cov();
  return GaussianState(std::move(labels), std::move(mean), std::move(cov));
}

struct SymplecticTransform {
  Eigen::MatrixXd matrix;
  std::string description;
};

inline bool is_symplectic(const SymplecticTransform& s, double tol = symplectic_tolerance) {
  if (s.matrix.rows() != s.matrix.cols() || s.matrix.rows() % 2 != 0) return false;
  const auto omega = symplectic_form(static_cast<std::size_t>(s.matrix.rows() / 2));
  return (s.matrix * omega * s.matrix.transpose() - omega).cwiseAbs().maxCoeff() <= tol;
}

inline SymplecticTransform identity_transform(std::size_t mode_count) {
  const auto n = static_cast<Eigen::Index>(2 * mode_count);
  return {Eigen::MatrixXd::Identity(n, n), "identity"};
}

/// `later` after `earlier`.
inline SymplecticTransform compose(const SymplecticTransform& later,
                                   const SymplecticTransform& earlier) {
  if (later.matrix.rows() != earlier.matrix.rows()) {
    throw std::domain_error("cannot compose transforms of different dimension");
  }
  return {later.matrix * earlier.matrix, later.description + " * " + earlier.description};
}

/// Squeezer exp[i xi (a b + a^dag b^dag)]. Heisenberg picture:
///   a -> cosh(xi) a + i sinh(xi) b^dag,  b -> cosh(xi) b + i sinh(xi) a^dag,
/// which in quadratures is x_a -> c x_a + s p_b, p_a -> c p_a + s x_b and the
/// same with a and b exchanged. (The conjugate U a U^dag reproduces the
/// textbook cosh(xi) a - i sinh(xi) b^dag.)
inline SymplecticTransform two_mode_squeezer(double xi, const ModeLabels& labels,
                                             const std::string& mode_a,
                                             const std::string& mode_b) {
  if (!std::isfinite(xi)) throw std::domain_error("squeezing gain must be finite");
  const auto a = 2 * static_cast<Eigen::Index>(index_of(labels, mode_a));
  const auto b = 2 * static_cast<Eigen::Index>(index_of(labels, mode_b));
  if (a == b) throw std::domain_error("two-mode squeezer needs two distinct modes");
  SymplecticTransform s = identity_transform(labels.size());
  const double ch = std::cosh(xi);
  const double sh = std::sinh(xi);
  s.matrix(a, a) = ch;
  s.matrix(a + 1, a + 1) = ch;
  s.matrix(b, b) = ch;
  s.matrix(b + 1, b + 1) = ch;
  s.matrix(a, b + 1) = sh;
  s.matrix(a + 1, b) = sh;
  s.matrix(b, a + 1) = sh;
  s.matrix(b + 1, a) = sh;
  s.description = "squeezer(" + mode_a + "," + mode_b + ")";
  return s;
}

/// Phase shifter exp[i phi a^dag a]: a -> a e^{i phi}, i.e. a^dag -> a^dag e^{-i phi}.
inline SymplecticTransform phase_shifter(double phi, const ModeLabels& labels,
                                         const std::string& mode) {
  if (!std::isfinite(phi)) throw std::domain_error("phase must be finite");
  const auto k = 2 * static_cast<Eigen::Index>(index_of(labels, mode));
  SymplecticTransform s = identity_transform(labels.size());
  const double cs = std::cos(phi);
  const double sn = std::sin(phi);
  s.matrix(k, k) = cs;
  s.matrix(k, k + 1) = -sn;
  s.matrix(k + 1, k) = sn;
  s.matrix(k + 1, k + 1) = cs;
  s.description = "phase(" + mode + ")";
  return s;
}

/// Beam splitter exp[i kappa (a c^dag + a^dag c)]: a -> cos(kappa) a + i sin(kappa) c
/// and symmetrically for c.
inline SymplecticTransform beam_splitter(double kappa, const ModeLabels& labels,
                                         const std::string& mode_a,
                                         const std::string& mode_c) {
  if (!std::isfinite(kappa) || kappa < 0.0 || kappa > constants::pi / 2.0) {
    throw std::domain_error("beam-splitter angle must lie in [0, pi/2]");
  }
  const auto a = 2 * static_cast<Eigen::Index>(index_of(labels, mode_a));
  const auto c = 2 * static_cast<Eigen::Index>(index_of(labels, mode_c));
  if (a == c) throw std::domain_error("beam splitter needs two distinct modes");
  SymplecticTransform s = identity_transform(labels.size());
  const double t = transmission_amplitude(kappa);
  const double r = std::sin(kappa);
  s.matrix(a, a) = t;
  s.matrix(a + 1, a + 1) = t;
  s.matrix(c, c) = t;
  s.matrix(c + 1, c + 1) = t;
  s.matrix(a, c + 1) = -r;
  s.matrix(a + 1, c) = r;
  s.matrix(c, a + 1) = -r;
  s.matrix(c + 1, a) = r;
  s.description = "beam_splitter(" + mode_a + "," + mode_c + ")";
  return s;
}

inline GaussianState apply(const SymplecticTransform& s, const GaussianState& state) {
  if (s.matrix.rows() != state.cov().rows() || s.matrix.cols() != state.cov().cols()) {
    throw std::domain_error("transform dimension does not match the state");
  }
  GaussianState out(state.labels(), s.matrix * state.mean(),
                    s.matrix * state.cov() * s.matrix.transpose());
  check_physical(out);
  return out;
}

/// <a^dag a> = (sigma_xx + sigma_pp)/2 - 1/2 + (xbar^2 + pbar^2)/2, with
/// round-off negatives clamped to zero.
inline double mean_photon_number(const GaussianState& state, const std::string& label) {
  const auto k = 2 * static_cast<Eigen::Index>(state.index_of(label));
  const auto& cov = state.cov();
  const auto& mean = state.mean();
  const double n = 0.5 * (cov(k, k) + cov(k + 1, k + 1)) - 0.5 +
                   0.5 * (mean(k) * mean(k) + mean(k + 1) * mean(k + 1));
  if (n < -uncertainty_tolerance) throw std::logic_error("negative photon number");
  return std::max(n, 0.0);
}

/// det(2 cov); equals 1 for pure states and exceeds 1 for mixed ones.
inline double purity_determinant(const GaussianState& state) {
  return (2.0 * state.cov()).determinant();
}

/// Input state: thermal i, vacuum v, thermal i'.
inline GaussianState input_state(const InterferometerParams& p) {
  return tensor(tensor(thermal_state(p.n_th_i, modes::idler), vacuum_state(modes::visible)),
                thermal_state(p.n_th_c, modes::seed));
}

/// The four interferometer elements in the order they act.
inline std::vector<SymplecticTransform> interferometer_elements(const InterferometerParams& p) {
  const ModeLabels labels{modes::idler, modes::visible, modes::seed};
  return {two_mode_squeezer(p.xi, labels, modes::idler, modes::visible),
          phase_shifter(p.phi, labels, modes::idler),
          beam_splitter(p.kappa, labels, modes::idler, modes::seed),
          two_mode_squeezer(p.xi, labels, modes::idler, modes::visible)};
}

/// Runs the full interferometer. All inputs are zero-mean and every element
/// is linear, so the mean is checked to stay zero after each step.
inline GaussianState interferometer_output(const InterferometerParams& p) {
  p.validate();
  GaussianState state = input_state(p);
  for (const auto& element : interferometer_elements(p)) {
    state = apply(element, state);
    if (state.mean().cwiseAbs().maxCoeff() != 0.0) {
      throw std::logic_error("non-zero quadrature mean after " + element.description);
    }
  }
  return state;
}

/// Mean photon number in the visible mode at the output.
inline double visible_photon_number(const InterferometerParams& p) {
  return mean_photon_number(interferometer_output(p), modes::visible);
}

}  // namespace iup::gaussian
