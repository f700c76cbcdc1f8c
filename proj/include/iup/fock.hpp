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
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "iup/blackbody.hpp"
#include "iup/params.hpp"

/// Brute-force density-matrix engine on a truncated Fock space. Each optical
/// element is the exponential of its Hermitian generator built from truncated
/// ladder operators; states evolve as rho -> U rho U^dag.
///
/// Mode k of an M-mode register has stride d^(M-1-k): mode 0 is the most
/// significant digit of the basis index.
namespace iup::fock {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
/// Row-major so that gathering the basis rows touched by an element is a
/// sequence of contiguous copies.
using Factor = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

inline constexpr std::size_t default_cutoff = 12;
/// Default bound on d^3 for the three-mode pipeline (d <= 16).
inline constexpr std::size_t default_dimension_limit = 4096;
/// Largest register for which a full d^M x d^M unitary is materialised.
inline constexpr std::size_t dense_unitary_limit = 1024;

inline constexpr double trace_step_tolerance = 1e-10;
inline constexpr double trace_tolerance = 1e-6;
inline constexpr double positivity_tolerance = 1e-8;

/// Raised when the requested cutoff exceeds the memory guard.
class CutoffGuardError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

inline std::size_t ipow(std::size_t base, std::size_t exp) {
  std::size_t r = 1;
  for (std::size_t k = 0; k < exp; ++k) r *= base;
  return r;
}

struct LadderOperators {
  Matrix annihilation;
  Matrix creation;
};

/// Truncated a and a^dag on levels 0..d-1, a|n> = sqrt(n)|n-1>.
inline LadderOperators ladder_operators(std::size_t d) {
  if (d < 2) throw std::domain_error("Fock cutoff must be at least 2");
  const auto n = static_cast<Eigen::Index>(d);
  Matrix a = Matrix::Zero(n, n);
  for (Eigen::Index k = 1; k < n; ++k) a(k - 1, k) = std::sqrt(static_cast<double>(k));
  Matrix adag = a.adjoint();
  return {std::move(a), std::move(adag)};
}

/// Density matrix stored in factored form rho = F F^dag, with F of size
/// d^M x r. Hermiticity and positivity hold by construction; conjugation by a
/// unitary acts on F alone, which keeps the cost at O(d^M * r * block) instead
/// of O(d^(2M) * block).
class TruncatedDensityMatrix {
 public:
  TruncatedDensityMatrix(std::size_t cutoff, std::size_t mode_count, Factor factor,
                         double truncation_loss = 0.0)
      : cutoff_(cutoff), modes_(mode_count), factor_(std::move(factor)),
        truncation_loss_(truncation_loss) {
    if (cutoff_ < 2) throw std::domain_error("Fock cutoff must be at least 2");
    if (modes_ == 0) throw std::domain_error("density matrix needs at least one mode");
    if (static_cast<std::size_t>(factor_.rows()) != ipow(cutoff_, modes_)) {
      throw std::domain_error("density factor has the wrong number of rows");
    }
  }

  std::size_t cutoff() const { return cutoff_; }
  std::size_t mode_count() const { return modes_; }
  std::size_t dimension() const { return static_cast<std::size_t>(factor_.rows()); }
  const Factor& factor() const { return factor_; }
  Factor& factor() { return factor_; }
  /// Probability mass discarded when the input thermal states were truncated.
  double truncation_loss() const { return truncation_loss_; }

  Matrix dense() const { return factor_ * factor_.adjoint(); }
  double trace() const { return factor_.squaredNorm(); }

  /// Eigenvalues of rho. The non-zero spectrum of F F^dag equals that of
  /// F^dag F; the remaining d^M - r eigenvalues are zero and are not listed.
  Eigen::VectorXd nonzero_spectrum() const {
    const Matrix gram = factor_.adjoint() * factor_;
    Eigen::SelfAdjointEigenSolver<Matrix> solver(gram, Eigen::EigenvaluesOnly);
    return solver.eigenvalues();
  }

  double min_eigenvalue() const {
    const double m = nonzero_spectrum().minCoeff();
    return factor_.cols() < factor_.rows() ? std::min(m, 0.0) : m;
  }

 private:
  std::size_t cutoff_;
  std::size_t modes_;
  Factor factor_;
  double truncation_loss_;
};

/// Throws std::logic_error if the trace or positivity budget is broken.
inline void check_valid(const TruncatedDensityMatrix& rho) {
  if (std::abs(rho.trace() - 1.0) > trace_tolerance) {
    throw std::logic_error("density matrix trace drifted from 1");
  }
  if (rho.min_eigenvalue() < -positivity_tolerance) {
    throw std::logic_error("density matrix is not positive semidefinite");
  }
}

/// Thermal state on levels 0..d-1, renormalised; the discarded tail is kept as
/// truncation_loss().
inline TruncatedDensityMatrix thermal_density_matrix(double n_th, std::size_t d) {
  if (d < 2) throw std::domain_error("Fock cutoff must be at least 2");
  if (!std::isfinite(n_th) || n_th < 0.0) {
    throw std::domain_error("thermal occupation must be finite and non-negative");
  }
  Eigen::VectorXd p(static_cast<Eigen::Index>(d));
  for (std::size_t n = 0; n < d; ++n) {
    p(static_cast<Eigen::Index>(n)) = bose_einstein_pmf(n_th, static_cast<long>(n));
  }
  const double kept = p.sum();
  p /= kept;
  // One column per populated level; the vacuum needs a single column.
  const auto rank = static_cast<Eigen::Index>((p.array() > 0.0).count());
  Factor factor = Factor::Zero(static_cast<Eigen::Index>(d), rank);
  Eigen::Index col = 0;
  for (Eigen::Index n = 0; n < p.size(); ++n) {
    if (p(n) > 0.0) factor(n, col++) = std::sqrt(p(n));
  }
  return TruncatedDensityMatrix(d, 1, std::move(factor), 1.0 - kept);
}

inline TruncatedDensityMatrix vacuum_density_matrix(std::size_t d) {
  return thermal_density_matrix(0.0, d);
}

/// rho_a (x) rho_b; modes of `b` follow those of `a`.
inline TruncatedDensityMatrix tensor(const TruncatedDensityMatrix& a,
                                     const TruncatedDensityMatrix& b) {
  if (a.cutoff() != b.cutoff()) throw std::domain_error("tensor factors need equal cutoffs");
  const Factor& fa = a.factor();
  const Factor& fb = b.factor();
  Factor f(fa.rows() * fb.rows(), fa.cols() * fb.cols());
  for (Eigen::Index i = 0; i < fa.rows(); ++i) {
    for (Eigen::Index j = 0; j < fa.cols(); ++j) {
      f.block(i * fb.rows(), j * fb.cols(), fb.rows(), fb.cols()) = fa(i, j) * fb;
    }
  }
  const double loss = 1.0 - (1.0 - a.truncation_loss()) * (1.0 - b.truncation_loss());
  return TruncatedDensityMatrix(a.cutoff(), a.mode_count() + b.mode_count(), std::move(f), loss);
}

/// weight * rho_a + (1 - weight) * rho_b.
inline TruncatedDensityMatrix mixture(double weight, const TruncatedDensityMatrix& a,
                                      const TruncatedDensityMatrix& b) {
  if (!(weight >= 0.0 && weight <= 1.0)) throw std::domain_error("mixture weight outside [0, 1]");
  if (a.cutoff() != b.cutoff() || a.mode_count() != b.mode_count()) {
    throw std::domain_error("mixture components must share cutoff and mode count");
  }
  Factor f(a.factor().rows(), a.factor().cols() + b.factor().cols());
  f << std::sqrt(weight) * a.factor(), std::sqrt(1.0 - weight) * b.factor();
  return TruncatedDensityMatrix(a.cutoff(), a.mode_count(), std::move(f),
                                weight * a.truncation_loss() + (1.0 - weight) * b.truncation_loss());
}

enum class ElementKind { two_mode_squeeze, phase_shift, beam_split };

/// One optical element: the generator type, its real parameter (xi, phi or
/// kappa) and the register modes it touches.
struct Generator {
  ElementKind kind;
  double parameter;
  std::vector<std::size_t> modes;
};

inline std::size_t arity(ElementKind kind) {
  switch (kind) {
    case ElementKind::two_mode_squeeze:
    case ElementKind::beam_split:
      return 2;
    case ElementKind::phase_shift:
      return 1;
  }
  throw std::domain_error("unknown generator type");
}

inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

/// Hermitian generator G on the element's own modes (dimension d^arity),
/// without the parameter: a b + a^dag b^dag, a^dag a, or a c^dag + a^dag c.
inline Matrix local_generator(ElementKind kind, std::size_t d) {
  const auto [a, adag] = ladder_operators(d);
  switch (kind) {
    case ElementKind::two_mode_squeeze:
      return kron(a, a) + kron(adag, adag);
    case ElementKind::phase_shift:
      return adag * a;
    case ElementKind::beam_split:
      return kron(a, adag) + kron(adag, a);
  }
  throw std::domain_error("unknown generator type");
}

/// exp(i * theta * G) for Hermitian G, via its eigendecomposition.
inline Matrix exp_i_hermitian(const Matrix& generator, double theta) {
  if (theta == 0.0) return Matrix::Identity(generator.rows(), generator.cols());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(generator);
  const Eigen::VectorXcd phases =
      (Complex(0.0, theta) * solver.eigenvalues().cast<Complex>()).array().exp();
  return solver.eigenvectors() * phases.asDiagonal() * solver.eigenvectors().adjoint();
}

inline void check_generator(const Generator& g) {
  if (!std::isfinite(g.parameter)) throw std::domain_error("element parameter must be finite");
  if (g.modes.size() != arity(g.kind)) {
    throw std::domain_error("element has the wrong number of modes");
  }
  if (g.modes.size() == 2 && g.modes[0] == g.modes[1]) {
    throw std::domain_error("two-mode element needs distinct modes");
  }
}

/// Unitary of the element restricted to its own modes.
inline Matrix element_block(const Generator& g, std::size_t d) {
  check_generator(g);
  return exp_i_hermitian(local_generator(g.kind, d), g.parameter);
}

inline void check_modes(const Generator& g, std::size_t mode_count) {
  for (auto m : g.modes) {
    if (m >= mode_count) throw std::domain_error("element mode index out of range");
  }
}

/// Full d^M x d^M unitary of an element, built from identity-padded ladder
/// operators on the whole register. Only for small registers.
inline Matrix element_unitary(const Generator& g, std::size_t d, std::size_t mode_count) {
  check_generator(g);
  check_modes(g, mode_count);
  const std::size_t dim = ipow(d, mode_count);
  if (dim > dense_unitary_limit) {
    throw CutoffGuardError("dense unitary of dimension " + std::to_string(dim) +
                           " exceeds limit " + std::to_string(dense_unitary_limit));
  }
  const auto [a, adag] = ladder_operators(d);
  const auto id = Matrix::Identity(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  auto embed = [&](const Matrix& op, std::size_t mode) {
    Matrix out = Matrix::Identity(1, 1);
    for (std::size_t k = 0; k < mode_count; ++k) out = kron(out, k == mode ? op : Matrix(id));
    return out;
  };
  Matrix generator;
  switch (g.kind) {
    case ElementKind::two_mode_squeeze: {
      generator = embed(a, g.modes[0]) * embed(a, g.modes[1]) +
                  embed(adag, g.modes[0]) * embed(adag, g.modes[1]);
      break;
    }
    case ElementKind::phase_shift:
      generator = embed(adag * a, g.modes[0]);
      break;
    case ElementKind::beam_split:
      generator = embed(a, g.modes[0]) * embed(adag, g.modes[1]) +
                  embed(adag, g.modes[0]) * embed(a, g.modes[1]);
      break;
  }
  return exp_i_hermitian(generator, g.parameter);
}

/// Multiplies the rows of `f` (a d^M-row register) by `block` acting on
/// `targets`, i.e. f -> (block on targets, identity elsewhere) * f.
inline void apply_block(const Matrix& block, const std::vector<std::size_t>& targets,
                        std::size_t d, std::size_t mode_count, Factor& f) {
  const std::size_t local = ipow(d, targets.size());
  if (static_cast<std::size_t>(block.rows()) != local) {
    throw std::domain_error("element block does not match its target modes");
  }
  std::vector<std::size_t> stride(mode_count);
  for (std::size_t k = 0; k < mode_count; ++k) stride[k] = ipow(d, mode_count - 1 - k);

  std::vector<Eigen::Index> offset(local);
  for (std::size_t l = 0; l < local; ++l) {
    std::size_t rest = l;
    std::size_t off = 0;
    for (std::size_t j = targets.size(); j-- > 0;) {
      off += (rest % d) * stride[targets[j]];
      rest /= d;
    }
    offset[l] = static_cast<Eigen::Index>(off);
  }

  const std::size_t dim = ipow(d, mode_count);
  std::vector<Eigen::Index> rows(local);
  for (std::size_t base = 0; base < dim; ++base) {
    bool on_target = false;
    for (auto t : targets) on_target = on_target || (base / stride[t]) % d != 0;
    if (on_target) continue;
    for (std::size_t l = 0; l < local; ++l) rows[l] = static_cast<Eigen::Index>(base) + offset[l];
    const Factor gathered = f(rows, Eigen::all);
    Factor updated;
    updated.noalias() = block * gathered;
    f(rows, Eigen::all) = updated;
  }
}

/// rho -> U rho U^dag for one element whose local unitary is `block`.
inline TruncatedDensityMatrix apply(const Generator& g, const Matrix& block,
                                    const TruncatedDensityMatrix& rho) {
  check_modes(g, rho.mode_count());
  TruncatedDensityMatrix out = rho;
  apply_block(block, g.modes, rho.cutoff(), rho.mode_count(), out.factor());
  if (std::abs(out.trace() - rho.trace()) > trace_step_tolerance) {
    throw std::logic_error("element did not conserve the trace");
  }
  return out;
}

/// rho -> U rho U^dag for one element.
inline TruncatedDensityMatrix apply(const Generator& g, const TruncatedDensityMatrix& rho) {
  return apply(g, element_block(g, rho.cutoff()), rho);
}

/// <n> of one mode, Tr(rho a^dag a) = sum over basis states of n_mode * <idx|rho|idx>.
inline double expectation_number(const TruncatedDensityMatrix& rho, std::size_t mode) {
  if (mode >= rho.mode_count()) throw std::domain_error("mode index out of range");
  const std::size_t d = rho.cutoff();
  const std::size_t stride = ipow(d, rho.mode_count() - 1 - mode);
  const Eigen::VectorXd diag = rho.factor().rowwise().squaredNorm();
  double total = 0.0;
  for (Eigen::Index idx = 0; idx < diag.size(); ++idx) {
    total += static_cast<double>((static_cast<std::size_t>(idx) / stride) % d) * diag(idx);
  }
  return total;
}

/// Probability that `mode` holds exactly `level` photons.
inline double level_population(const TruncatedDensityMatrix& rho, std::size_t mode,
                               std::size_t level) {
  if (mode >= rho.mode_count()) throw std::domain_error("mode index out of range");
  const std::size_t d = rho.cutoff();
  const std::size_t stride = ipow(d, rho.mode_count() - 1 - mode);
  const Eigen::VectorXd diag = rho.factor().rowwise().squaredNorm();
  double total = 0.0;
  for (Eigen::Index idx = 0; idx < diag.size(); ++idx) {
    if ((static_cast<std::size_t>(idx) / stride) % d == level) total += diag(idx);
  }
  return total;
}

/// Reduced d x d density matrix of one mode.
inline Matrix reduced_state(const TruncatedDensityMatrix& rho, std::size_t mode) {
  if (mode >= rho.mode_count()) throw std::domain_error("mode index out of range");
  const auto d = static_cast<Eigen::Index>(rho.cutoff());
  const std::size_t stride = ipow(rho.cutoff(), rho.mode_count() - 1 - mode);
  const Factor& f = rho.factor();
  Matrix out = Matrix::Zero(d, d);
  for (Eigen::Index idx = 0; idx < f.rows(); ++idx) {
    const auto n = static_cast<Eigen::Index>((static_cast<std::size_t>(idx) / stride) % rho.cutoff());
    if (n != 0) continue;
    for (Eigen::Index r = 0; r < d; ++r) {
      for (Eigen::Index s = 0; s < d; ++s) {
        out(r, s) += f.row(idx + r * static_cast<Eigen::Index>(stride))
                         .dot(f.row(idx + s * static_cast<Eigen::Index>(stride)));
      }
    }
  }
  // Eigen's dot conjugates its first argument; (r, s) above is conj(rho_rs).
  return out.conjugate();
}

/// Register order for the pipeline: i, v, i'.
inline constexpr std::size_t mode_i = 0;
inline constexpr std::size_t mode_v = 1;
inline constexpr std::size_t mode_c = 2;

inline std::vector<Generator> interferometer_generators(const InterferometerParams& p) {
  return {{ElementKind::two_mode_squeeze, p.xi, {mode_i, mode_v}},
          {ElementKind::phase_shift, p.phi, {mode_i}},
          {ElementKind::beam_split, p.kappa, {mode_i, mode_c}},
          {ElementKind::two_mode_squeeze, p.xi, {mode_i, mode_v}}};
}

inline void check_cutoff_guard(std::size_t d, std::size_t dimension_limit) {
  if (d < 2) throw std::domain_error("Fock cutoff must be at least 2");
  if (d > 0 && ipow(d, 3) > dimension_limit) {
    throw CutoffGuardError("Fock cutoff " + std::to_string(d) + " gives d^3 = " +
                           std::to_string(ipow(d, 3)) + " > limit " +
                           std::to_string(dimension_limit));
  }
}

/// Evolves thermal(n_th_i) (x) |0><0| (x) thermal(n_th_c) through squeezer,
/// phase shifter, beam splitter and squeezer.
inline TruncatedDensityMatrix evolve_pipeline(const InterferometerParams& p,
                                              std::size_t d = default_cutoff,
                                              std::size_t dimension_limit = default_dimension_limit) {
  p.validate();
  check_cutoff_guard(d, dimension_limit);
  TruncatedDensityMatrix rho =
      tensor(tensor(thermal_density_matrix(p.n_th_i, d), vacuum_density_matrix(d)),
             thermal_density_matrix(p.n_th_c, d));
  const auto elements = interferometer_generators(p);
  // Both crystals share xi, so the squeezer unitary is built once.
  const Matrix squeezer = element_block(elements[0], d);
  rho = apply(elements[0], squeezer, rho);
  rho = apply(elements[1], rho);
  rho = apply(elements[2], rho);
  rho = apply(elements[3], squeezer, rho);
  return rho;
}

inline double visible_photon_number(const InterferometerParams& p, std::size_t d = default_cutoff) {
  return expectation_number(evolve_pipeline(p, d), mode_v);
}

}  // namespace iup::fock
