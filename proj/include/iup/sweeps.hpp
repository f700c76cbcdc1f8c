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
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <ctime>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "iup/blackbody.hpp"
#include "iup/fock.hpp"
#include "iup/gaussian.hpp"
#include "iup/interferometer.hpp"
#include "iup/params.hpp"

#ifndef IUP_VERSION
#define IUP_VERSION "0.0.0"
#endif

/// Figure-regeneration sweeps and cross-engine verification campaigns.
namespace iup::sweeps {

enum class Target { fig2a, fig2b, fig3a, fig3b, fig3c, fig3d, custom };
enum class Engine { analytic, gaussian, fock };
enum class Scale { linear, log };
enum class SweptParam { temperature, wavelength, cos_kappa, kappa, n_th_i, n_th_c, xi, phi };
enum class Quantity { occupation, visibility, n_visible };

inline constexpr double gaussian_tolerance = 1e-10;
inline constexpr double fock_tolerance = 1e-4;
/// Largest thermal tail the Fock engine may discard, (n/(n+1))^d.
inline constexpr double fock_truncation_budget = 1e-6;

class SweepRefused : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

inline const char* to_string(Target t) {
  switch (t) {
    case Target::fig2a: return "fig2a";
    case Target::fig2b: return "fig2b";
    case Target::fig3a: return "fig3a";
    case Target::fig3b: return "fig3b";
    case Target::fig3c: return "fig3c";
    case Target::fig3d: return "fig3d";
    case Target::custom: return "custom";
  }
  return "?";
}

inline const char* to_string(Engine e) {
  switch (e) {
    case Engine::analytic: return "analytic";
    case Engine::gaussian: return "gaussian";
    case Engine::fock: return "fock";
  }
  return "?";
}

inline const char* to_string(Quantity q) {
  switch (q) {
    case Quantity::occupation: return "occupation";
    case Quantity::visibility: return "visibility";
    case Quantity::n_visible: return "n_visible";
  }
  return "?";
}

/// Column name of the swept parameter, with its unit.
inline const char* column_name(SweptParam p) {
  switch (p) {
    case SweptParam::temperature: return "temperature_K";
    case SweptParam::wavelength: return "wavelength_m";
    case SweptParam::cos_kappa: return "cos_kappa";
    case SweptParam::kappa: return "kappa_rad";
    case SweptParam::n_th_i: return "n_th_i";
    case SweptParam::n_th_c: return "n_th_c";
    case SweptParam::xi: return "xi";
    case SweptParam::phi: return "phi_rad";
  }
  return "?";
}

inline Target parse_target(const std::string& s) {
  for (auto t : {Target::fig2a, Target::fig2b, Target::fig3a, Target::fig3b, Target::fig3c,
                 Target::fig3d, Target::custom}) {
    if (s == to_string(t)) return t;
  }
  throw std::invalid_argument("unknown sweep target '" + s + "'");
}

inline Engine parse_engine(const std::string& s) {
  for (auto e : {Engine::analytic, Engine::gaussian, Engine::fock}) {
    if (s == to_string(e)) return e;
  }
  throw std::invalid_argument("unknown engine '" + s + "'");
}

inline Quantity parse_quantity(const std::string& s) {
  for (auto q : {Quantity::occupation, Quantity::visibility, Quantity::n_visible}) {
    if (s == to_string(q)) return q;
  }
  throw std::invalid_argument("unknown sweep quantity '" + s + "'");
}

inline SweptParam parse_param(const std::string& s) {
  if (s == "temperature" || s == "temp") return SweptParam::temperature;
  if (s == "wavelength" || s == "lambda") return SweptParam::wavelength;
  if (s == "cos_kappa" || s == "t") return SweptParam::cos_kappa;
  if (s == "kappa") return SweptParam::kappa;
  if (s == "n_th_i" || s == "n-i") return SweptParam::n_th_i;
  if (s == "n_th_c" || s == "n-c") return SweptParam::n_th_c;
  if (s == "xi") return SweptParam::xi;
  if (s == "phi") return SweptParam::phi;
  throw std::invalid_argument("unknown sweep parameter '" + s + "'");
}

struct SweepRange {
  double min = 0.0;
  double max = 1.0;
  std::size_t count = 200;
  Scale scale = Scale::linear;

  double at(std::size_t k) const {
    const double f = count > 1 ? static_cast<double>(k) / static_cast<double>(count - 1) : 0.0;
    if (k + 1 == count) return max;
    if (scale == Scale::log) return std::exp(std::log(min) + f * (std::log(max) - std::log(min)));
    return min + f * (max - min);
  }
};

struct SweepSpec {
  Target target = Target::custom;
  SweptParam param = SweptParam::cos_kappa;
  Quantity quantity = Quantity::visibility;
  SweepRange range;
  /// Values of the interferometer knobs that are not swept.
  InterferometerParams fixed;
  /// Fixed black-body settings for occupation sweeps.
  double temperature = 300.0;
  double wavelength = 8e-6;
  std::vector<Engine> engines{Engine::analytic};
  std::size_t cutoff = fock::default_cutoff;
  std::size_t dimension_limit = fock::default_dimension_limit;

  bool uses(Engine e) const { return std::find(engines.begin(), engines.end(), e) != engines.end(); }
};

inline bool is_spectral(SweptParam p) {
  return p == SweptParam::temperature || p == SweptParam::wavelength;
}

/// Throws std::domain_error (or SweepRefused for the Fock guard) on an
/// inconsistent spec.
inline void validate(const SweepSpec& spec) {
  const auto& r = spec.range;
  if (r.count < 2) throw std::domain_error("sweep needs at least 2 points");
  if (!std::isfinite(r.min) || !std::isfinite(r.max) || !(r.min < r.max)) {
    throw std::domain_error("sweep range must satisfy min < max");
  }
  if (r.scale == Scale::log && !(r.min > 0.0)) {
    throw std::domain_error("log sweep needs a positive lower bound");
  }
  if (spec.engines.empty()) throw std::domain_error("sweep needs at least one engine");
  if (spec.engines.front() != Engine::analytic) {
    throw std::domain_error("the analytic engine must be the first column");
  }
  if ((spec.quantity == Quantity::occupation) != is_spectral(spec.param)) {
    throw std::domain_error(
        "occupation sweeps take temperature or wavelength; interferometer sweeps take the "
        "other parameters");
  }
  if (spec.param == SweptParam::phi && spec.quantity == Quantity::visibility) {
    throw std::domain_error("visibility does not depend on phi; sweep n_visible instead");
  }
  spec.fixed.validate();
  detail::require_positive(spec.temperature, "temperature");
  detail::require_positive(spec.wavelength, "wavelength");

  auto check_param = [&](double x) {
    switch (spec.param) {
      case SweptParam::temperature: detail::require_positive(x, "temperature"); break;
      case SweptParam::wavelength: detail::require_positive(x, "wavelength"); break;
      case SweptParam::cos_kappa:
        if (x < 0.0 || x > 1.0) throw std::domain_error("cos_kappa must lie in [0, 1]");
        break;
      case SweptParam::kappa:
        if (x < 0.0 || x > constants::pi / 2.0) throw std::domain_error("kappa must lie in [0, pi/2]");
        break;
      case SweptParam::n_th_i:
      case SweptParam::n_th_c:
      case SweptParam::xi:
        if (x < 0.0) throw std::domain_error(std::string(column_name(spec.param)) + " must be non-negative");
        break;
      case SweptParam::phi: break;
    }
  };
  check_param(r.min);
  check_param(r.max);
}

inline SweepSpec builtin_spec(Target target) {
  SweepSpec s;
  s.target = target;
  InterferometerParams op;
  op.xi = 0.03;
  op.kappa = 0.05 * constants::pi;
  op.n_th_i = 0.2;
  op.n_th_c = 0.15;
  s.fixed = op;
  switch (target) {
    case Target::fig2a:
      s.param = SweptParam::temperature;
      s.quantity = Quantity::occupation;
      s.wavelength = 8e-6;
      s.range = {100.0, 1000.0, 181, Scale::linear};
      break;
    case Target::fig2b:
      s.param = SweptParam::wavelength;
      s.quantity = Quantity::occupation;
      s.temperature = 300.0;
      s.range = {1e-6, 30e-6, 291, Scale::linear};
      break;
    case Target::fig3a:
      s.param = SweptParam::cos_kappa;
      s.range = {0.0, 1.0, 200, Scale::linear};
      break;
    case Target::fig3b:
      s.param = SweptParam::n_th_c;
      s.range = {0.0, 1.0, 200, Scale::linear};
      break;
    case Target::fig3c:
      s.param = SweptParam::n_th_i;
      s.range = {0.0, 1.0, 200, Scale::linear};
      break;
    case Target::fig3d:
      s.param = SweptParam::xi;
      s.range = {0.1 / 200.0, 0.1, 200, Scale::linear};
      break;
    case Target::custom:
      break;
  }
  return s;
}

struct SweepRow {
  double x;
  std::vector<double> values;  // one per engine, in SweepSpec::engines order
};

struct SweepResult {
  SweepSpec spec;
  std::vector<SweepRow> rows;
  std::string timestamp;
  std::string tool_version = IUP_VERSION;
};

namespace detail {

inline InterferometerParams at_point(const SweepSpec& spec, double x) {
  InterferometerParams p = spec.fixed;
  switch (spec.param) {
    case SweptParam::cos_kappa: p.kappa = std::acos(std::clamp(x, 0.0, 1.0)); break;
    case SweptParam::kappa: p.kappa = x; break;
    case SweptParam::n_th_i: p.n_th_i = x; break;
    case SweptParam::n_th_c: p.n_th_c = x; break;
    case SweptParam::xi: p.xi = x; break;
    case SweptParam::phi: p.phi = x; break;
    case SweptParam::temperature:
    case SweptParam::wavelength: break;
  }
  return p;
}

inline double occupation_at(const SweepSpec& spec, double x) {
  const double temperature = spec.param == SweptParam::temperature ? x : spec.temperature;
  const double wavelength = spec.param == SweptParam::wavelength ? x : spec.wavelength;
  return mean_occupation(ThermalEnvironment(SpectralPoint::from_wavelength(wavelength), temperature));
}

inline double thermal_tail(double n, std::size_t d) {
  return std::pow(n / (n + 1.0), static_cast<double>(d));
}

/// Refuses Fock runs whose register exceeds the memory guard or whose thermal
/// inputs would be truncated by more than the budget.
inline void check_fock_budget(const SweepSpec& spec) {
  try {
    fock::check_cutoff_guard(spec.cutoff, spec.dimension_limit);
  } catch (const fock::CutoffGuardError& e) {
    throw SweepRefused(std::string("fock engine refused: ") + e.what());
  }
  double n_max = 0.0;
  if (spec.quantity == Quantity::occupation) {
    for (std::size_t k = 0; k < spec.range.count; ++k) {
      n_max = std::max(n_max, occupation_at(spec, spec.range.at(k)));
    }
  } else {
    n_max = std::max(spec.fixed.n_th_i, spec.fixed.n_th_c);
    if (spec.param == SweptParam::n_th_i || spec.param == SweptParam::n_th_c) {
      n_max = std::max(n_max, spec.range.max);
    }
  }
  const double tail = thermal_tail(n_max, spec.cutoff);
  if (tail > fock_truncation_budget) {
    std::ostringstream msg;
    msg << "fock engine refused: occupation " << n_max << " at cutoff " << spec.cutoff
        << " truncates a thermal tail of " << tail << " > limit " << fock_truncation_budget;
    throw SweepRefused(msg.str());
  }
}

inline double evaluate(const SweepSpec& spec, Engine engine, double x) {
  if (spec.quantity == Quantity::occupation) {
    const double n = occupation_at(spec, x);
    switch (engine) {
      case Engine::analytic: return n;
      case Engine::gaussian: return gaussian::mean_photon_number(gaussian::thermal_state(n), modes::idler);
      case Engine::fock: return fock::expectation_number(fock::thermal_density_matrix(n, spec.cutoff), 0);
    }
  }
  const InterferometerParams p = at_point(spec, x);
  auto n_v = [&](const InterferometerParams& q) {
    switch (engine) {
      case Engine::analytic: return n_visible(q);
      case Engine::gaussian: return gaussian::visible_photon_number(q);
      case Engine::fock: return fock::visible_photon_number(q, spec.cutoff);
    }
    return 0.0;
  };
  if (spec.quantity == Quantity::n_visible) return n_v(p);
  if (engine == Engine::analytic) return visibility_closed_form(p).visibility;
  InterferometerParams at_max = p;
  at_max.phi = 0.0;
  InterferometerParams at_min = p;
  at_min.phi = constants::pi;
  return fringe_visibility(n_v(at_max), n_v(at_min));
}

inline std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace detail

/// Evaluates every engine at every sweep point, in sweep order.
inline SweepResult run_sweep(const SweepSpec& spec) {
  validate(spec);
  if (spec.uses(Engine::fock)) detail::check_fock_budget(spec);
  SweepResult result;
  result.spec = spec;
  result.timestamp = detail::utc_timestamp();
  result.rows.reserve(spec.range.count);
  for (std::size_t k = 0; k < spec.range.count; ++k) {
    SweepRow row{spec.range.at(k), {}};
    for (auto e : spec.engines) row.values.push_back(detail::evaluate(spec, e, row.x));
    result.rows.push_back(std::move(row));
  }
  return result;
}

/// Shortest decimal string that parses back to the same double.
inline std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

/// CSV with `#` metadata lines (optional), then a header
/// `<swept column>,analytic[,gaussian][,fock]` and one row per point.
inline void write_csv(const SweepResult& result, std::ostream& out, bool metadata = true) {
  const auto& spec = result.spec;
  if (metadata) {
    out << "# target=" << to_string(spec.target) << '\n';
    out << "# swept_param=" << column_name(spec.param) << " quantity=" << to_string(spec.quantity)
        << " min=" << format_double(spec.range.min) << " max=" << format_double(spec.range.max)
        << " count=" << spec.range.count
        << " scale=" << (spec.range.scale == Scale::log ? "log" : "linear") << '\n';
    if (spec.quantity == Quantity::occupation) {
      out << "# fixed temperature_K=" << format_double(spec.temperature)
          << " wavelength_m=" << format_double(spec.wavelength) << '\n';
    } else {
      out << "# fixed xi=" << format_double(spec.fixed.xi)
          << " phi_rad=" << format_double(spec.fixed.phi)
          << " kappa_rad=" << format_double(spec.fixed.kappa)
          << " n_th_i=" << format_double(spec.fixed.n_th_i)
          << " n_th_c=" << format_double(spec.fixed.n_th_c) << '\n';
    }
    out << "# tolerances gaussian_vs_analytic=" << format_double(gaussian_tolerance)
        << " fock_vs_analytic=" << format_double(fock_tolerance)
        << " fock_cutoff=" << spec.cutoff << '\n';
    out << "# tool_version=" << result.tool_version << '\n';
    out << "# generated=" << result.timestamp << '\n';
  }
  out << column_name(spec.param);
  for (auto e : spec.engines) out << ',' << to_string(e);
  out << '\n';
  for (const auto& row : result.rows) {
    out << format_double(row.x);
    for (double v : row.values) out << ',' << format_double(v);
    out << '\n';
  }
}

// ---------------------------------------------------------------------------
// Cross-engine verification

struct GridSpec {
  std::vector<double> xi{0.01, 0.03};
  std::vector<double> kappa{0.0, 0.05 * constants::pi, 0.25 * constants::pi};
  std::vector<double> phi{0.0, constants::pi / 2.0, constants::pi};
  std::vector<double> n_i{0.0, 0.15, 0.2};
  std::vector<double> n_c{0.0, 0.15, 0.2};
  std::size_t cutoff = fock::default_cutoff;
  std::size_t dimension_limit = fock::default_dimension_limit;
  bool include_fock = true;
  /// Also run the Fock engine at cutoff + 2 and require the error to shrink.
  bool convergence_check = true;
};

/// The wider grid used for the Gaussian engine alone.
inline GridSpec gaussian_grid() {
  GridSpec g;
  g.xi = {0.01, 0.03, 0.1};
  g.phi = {0.0, constants::pi / 4.0, constants::pi / 2.0, constants::pi};
  g.kappa = {0.0, 0.05 * constants::pi, 0.25 * constants::pi, 0.5 * constants::pi};
  g.n_i = {0.0, 0.15, 0.2, 1.0};
  g.n_c = {0.0, 0.15, 0.2, 1.0};
  g.include_fock = false;
  g.convergence_check = false;
  return g;
}

/// |value - reference| relative to max(|reference|, floor). The floor keeps
/// points where the reference vanishes (perfect destructive interference)
/// meaningful; the engines use sinh^2(xi), the single-crystal emission.
inline double relative_discrepancy(double value, double reference, double floor) {
  const double scale = std::max(std::abs(reference), floor);
  const double diff = std::abs(value - reference);
  if (scale == 0.0) return diff == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return diff / scale;
}

struct PointReport {
  InterferometerParams params;
  double analytic = 0.0;
  double gaussian = 0.0;
  std::optional<double> fock;
  std::optional<double> fock_refined;
  double gaussian_error = 0.0;
  std::optional<double> fock_error;
  std::optional<double> fock_refined_error;
  double thermal_truncation = 0.0;
  double top_level_population = 0.0;
};

struct VerifyReport {
  GridSpec grid;
  std::vector<PointReport> points;
  double max_gaussian_error = 0.0;
  double max_fock_error = 0.0;
  double max_fock_refined_error = 0.0;
  bool gaussian_ok = true;
  bool fock_ok = true;
  bool convergence_ok = true;
  bool convergence_checked = false;
  double max_thermal_truncation = 0.0;
  double max_top_level_population = 0.0;

  bool passed() const { return gaussian_ok && fock_ok && convergence_ok; }
};

inline VerifyReport verify_engines(const GridSpec& grid) {
  if (grid.include_fock) fock::check_cutoff_guard(grid.cutoff, grid.dimension_limit);
  const std::size_t refined = grid.cutoff + 2;
  const bool refine = grid.include_fock && grid.convergence_check &&
                      fock::ipow(refined, 3) <= grid.dimension_limit;

  VerifyReport report;
  report.grid = grid;
  report.convergence_checked = refine;
  for (double xi : grid.xi) {
    for (double kappa : grid.kappa) {
      for (double phi : grid.phi) {
        for (double ni : grid.n_i) {
          for (double nc : grid.n_c) {
            PointReport pt;
            pt.params = {xi, phi, kappa, ni, nc};
            const double floor = std::sinh(xi) * std::sinh(xi);
            pt.analytic = n_visible(pt.params);
            pt.gaussian = gaussian::visible_photon_number(pt.params);
            pt.gaussian_error = relative_discrepancy(pt.gaussian, pt.analytic, floor);
            report.max_gaussian_error = std::max(report.max_gaussian_error, pt.gaussian_error);
            if (grid.include_fock) {
              const auto rho = fock::evolve_pipeline(pt.params, grid.cutoff, grid.dimension_limit);
              pt.fock = fock::expectation_number(rho, fock::mode_v);
              pt.fock_error = relative_discrepancy(*pt.fock, pt.analytic, floor);
              pt.thermal_truncation = rho.truncation_loss();
              pt.top_level_population =
                  std::max(fock::level_population(rho, fock::mode_i, grid.cutoff - 1),
                           fock::level_population(rho, fock::mode_v, grid.cutoff - 1));
              report.max_fock_error = std::max(report.max_fock_error, *pt.fock_error);
              report.max_thermal_truncation =
                  std::max(report.max_thermal_truncation, pt.thermal_truncation);
              report.max_top_level_population =
                  std::max(report.max_top_level_population, pt.top_level_population);
              if (refine) {
                pt.fock_refined = fock::visible_photon_number(pt.params, refined);
                pt.fock_refined_error = relative_discrepancy(*pt.fock_refined, pt.analytic, floor);
                report.max_fock_refined_error =
                    std::max(report.max_fock_refined_error, *pt.fock_refined_error);
              }
            }
            report.points.push_back(pt);
          }
        }
      }
    }
  }
  report.gaussian_ok = report.max_gaussian_error <= gaussian_tolerance;
  report.fock_ok = !grid.include_fock || report.max_fock_error <= fock_tolerance;
  report.convergence_ok = !refine || report.max_fock_refined_error <= report.max_fock_error;
  return report;
}

}  // namespace iup::sweeps
