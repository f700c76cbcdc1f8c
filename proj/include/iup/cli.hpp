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
#include <cstddef>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "iup/blackbody.hpp"
#include "iup/fock.hpp"
#include "iup/gaussian.hpp"
#include "iup/interferometer.hpp"
#include "iup/plot.hpp"
#include "iup/sweeps.hpp"
#include "iup/units.hpp"

/// Command-line front end: blackbody, visibility, sweep and verify.
///
/// Exit codes: 0 success, 1 verification failure, 2 usage or domain error,
/// 3 I/O error.
namespace iup::cli {

enum ExitCode : int { exit_ok = 0, exit_verification_failed = 1, exit_usage = 2, exit_io = 3 };

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using units::UsageError;

namespace detail {

inline bool is_flag_present(const std::vector<std::string>& args, const std::string& flag) {
  return std::any_of(args.begin(), args.end(), [&](const std::string& a) {
    return a == flag || a.rfind(flag + "=", 0) == 0;
  });
}

inline bool is_boolean_flag(const std::string& key) {
  return key == "no-meta" || key == "no-convergence" || key == "scan";
}

/// Expands `--config <file>`: each `key=value` line of the file becomes
/// `--key value` unless the flag is already on the command line.
inline std::vector<std::string> expand_config(std::vector<std::string> args) {
  std::string path;
  for (std::size_t k = 0; k < args.size(); ++k) {
    if (args[k] == "--config") {
      if (k + 1 >= args.size()) throw UsageError("--config: missing file path");
      path = args[k + 1];
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(k),
                 args.begin() + static_cast<std::ptrdiff_t>(k + 2));
      break;
    }
    if (args[k].rfind("--config=", 0) == 0) {
      path = args[k].substr(9);
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(k));
      break;
    }
  }
  if (path.empty()) return args;

  std::ifstream in(path);
  if (!in) throw IoError("--config: cannot read '" + path + "'");
  std::vector<std::string> extra;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = units::trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw UsageError("--config: line " + std::to_string(line_no) + " is not key=value");
    }
    std::string key = units::trim(line.substr(0, eq));
    const std::string value = units::trim(line.substr(eq + 1));
    while (!key.empty() && key.front() == '-') key.erase(key.begin());
    const std::string flag = "--" + key;
    if (is_flag_present(args, flag)) continue;
    if (is_boolean_flag(key)) {
      if (value == "true" || value == "1" || value == "yes") extra.push_back(flag);
      continue;
    }
    extra.push_back(flag);
    extra.push_back(value);
  }
  const auto insert_at = args.empty() ? args.end() : args.begin() + 1;
  args.insert(insert_at, extra.begin(), extra.end());
  return args;
}

inline double resolve_occupation(const std::string& direct, const char* direct_flag,
                                 const std::string& wavelength, const std::string& temperature,
                                 const char* temperature_flag) {
  if (!direct.empty() && !temperature.empty()) {
    throw UsageError(std::string("give either ") + direct_flag + " or " + temperature_flag);
  }
  if (!direct.empty()) {
    const double n = units::parse_number(direct_flag, direct);
    if (n < 0.0) throw UsageError(std::string(direct_flag) + ": occupation must be non-negative");
    return n;
  }
  if (temperature.empty()) {
    throw UsageError(std::string("need ") + direct_flag + " or " + temperature_flag + " with --lambda");
  }
  if (wavelength.empty()) throw UsageError(std::string(temperature_flag) + " requires --lambda");
  const double lambda = units::parse_length("--lambda", wavelength);
  const double kelvin = units::parse_temperature(temperature_flag, temperature);
  return mean_occupation(ThermalEnvironment(SpectralPoint::from_wavelength(lambda), kelvin));
}

inline double resolve_kappa(const std::string& kappa, const std::string& transmissivity) {
  if (!kappa.empty() && !transmissivity.empty()) {
    throw UsageError("give either --kappa or --transmissivity");
  }
  if (!kappa.empty()) {
    const double k = units::parse_angle("--kappa", kappa);
    if (k < 0.0 || k > constants::pi / 2.0) throw UsageError("--kappa: must lie in [0, pi/2]");
    return k;
  }
  if (!transmissivity.empty()) {
    const double tau = units::parse_number("--transmissivity", transmissivity);
    if (tau < 0.0 || tau > 1.0) throw UsageError("--transmissivity: must lie in [0, 1]");
    return kappa_from_transmissivity(tau);
  }
  return -1.0;
}

inline double parse_swept_value(sweeps::SweptParam p, const char* flag, const std::string& text) {
  switch (p) {
    case sweeps::SweptParam::temperature: return units::parse_temperature(flag, text);
    case sweeps::SweptParam::wavelength: return units::parse_length(flag, text);
    case sweeps::SweptParam::kappa:
    case sweeps::SweptParam::phi: return units::parse_angle(flag, text);
    default: return units::parse_number(flag, text);
  }
}

}  // namespace detail

struct BlackbodyArgs {
  std::string wavelength, omega, wavenumber, temperature, band, area;
};

inline int cmd_blackbody(const BlackbodyArgs& a, std::ostream& out) {
  const double kelvin = units::parse_temperature("--temp", a.temperature);
  nlohmann::ordered_json j;
  j["temperature_K"] = kelvin;
  j["wien_peak_m"] = wien_peak_wavelength(kelvin);

  const int spectral = !a.wavelength.empty() + !a.omega.empty() + !a.wavenumber.empty();
  if (spectral > 1) throw UsageError("give only one of --wavelength, --omega, --wavenumber");
  if (spectral == 1) {
    const SpectralPoint point =
        !a.wavelength.empty()
            ? SpectralPoint::from_wavelength(units::parse_length("--wavelength", a.wavelength))
        : !a.omega.empty()
            ? SpectralPoint::from_omega(units::parse_omega("--omega", a.omega))
            : SpectralPoint::from_wavenumber(units::parse_wavenumber("--wavenumber", a.wavenumber));
    const ThermalEnvironment env(point, kelvin);
    j["omega_rad_per_s"] = point.omega();
    j["wavelength_m"] = point.wavelength();
    j["n_th"] = mean_occupation(env);
    j["energy_density_J_s_per_m3"] = planck_energy_density(env);
  }
  if (a.band.empty() != a.area.empty()) throw UsageError("--band and --area go together");
  if (!a.band.empty()) {
    const auto band = units::parse_band("--band", a.band);
    const double area = units::parse_area("--area", a.area);
    const auto bg = detector_band_background(kelvin, band, area);
    j["band_cm-1"] = {band.low, band.high};
    j["area_m2"] = area;
    j["power_W"] = bg.power;
    j["photon_flux_per_s"] = bg.photon_flux;
  }
  out << j.dump(2) << '\n';
  return exit_ok;
}

struct VisibilityArgs {
  std::string xi, kappa, transmissivity, n_i, n_c, lambda, temp_i, temp_c, phi;
  std::string engine = "analytic";
  std::size_t cutoff = fock::default_cutoff;
  bool scan = false;
};

inline int cmd_visibility(const VisibilityArgs& a, std::ostream& out, std::ostream& err) {
  InterferometerParams p;
  p.xi = units::parse_number("--xi", a.xi);
  p.kappa = detail::resolve_kappa(a.kappa, a.transmissivity);
  if (p.kappa < 0.0) throw UsageError("need --kappa or --transmissivity");
  p.n_th_i = detail::resolve_occupation(a.n_i, "--n-i", a.lambda, a.temp_i, "--temp-i");
  p.n_th_c = detail::resolve_occupation(a.n_c, "--n-c", a.lambda, a.temp_c, "--temp-c");
  if (!a.phi.empty()) p.phi = units::parse_angle("--phi", a.phi);
  p.validate();

  nlohmann::ordered_json j;
  j["xi"] = p.xi;
  j["kappa_rad"] = p.kappa;
  j["transmissivity"] = std::pow(transmission_amplitude(p.kappa), 2);
  j["n_th_i"] = p.n_th_i;
  j["n_th_c"] = p.n_th_c;
  if (const auto warning = p.advisory()) {
    err << "warning: " << *warning << '\n';
    j["warning"] = *warning;
  }

  if (!a.phi.empty()) {
    const auto engine = sweeps::parse_engine(a.engine);
    double n = 0.0;
    switch (engine) {
      case sweeps::Engine::analytic: n = n_visible(p); break;
      case sweeps::Engine::gaussian: n = gaussian::visible_photon_number(p); break;
      case sweeps::Engine::fock: n = fock::visible_photon_number(p, a.cutoff); break;
    }
    j["phi_rad"] = p.phi;
    j["engine"] = sweeps::to_string(engine);
    j["n_visible"] = n;
  } else {
    const auto r = visibility_closed_form(p);
    j["visibility"] = r.visibility;
    j["n_v_max"] = r.n_v_max;
    j["n_v_min"] = r.n_v_min;
    j["phi_max_rad"] = r.phi_max;
    j["phi_min_rad"] = r.phi_min;
    j["degenerate"] = r.degenerate;
    if (a.scan) {
      const auto s = visibility_by_scan(p);
      j["scan"] = {{"visibility", s.visibility}, {"phi_max_rad", s.phi_max},
                   {"phi_min_rad", s.phi_min}, {"degenerate", s.degenerate}};
    }
  }
  out << j.dump(2) << '\n';
  return exit_ok;
}

struct SweepArgs {
  std::string target, engines = "analytic", out_path, plot_path;
  bool no_meta = false;
  std::size_t cutoff = fock::default_cutoff;
  std::size_t count = 0;
  std::string param, quantity, min, max, scale = "linear";
  std::string xi, kappa, transmissivity, phi, n_i, n_c, temp, lambda;
};

inline sweeps::SweepSpec build_sweep_spec(const SweepArgs& a) {
  const auto target = sweeps::parse_target(a.target);
  sweeps::SweepSpec spec = sweeps::builtin_spec(target);
  if (target == sweeps::Target::custom) {
    if (a.param.empty() || a.min.empty() || a.max.empty()) {
      throw UsageError("custom sweeps need --param, --min and --max");
    }
    spec.param = sweeps::parse_param(a.param);
    spec.quantity = !a.quantity.empty()       ? sweeps::parse_quantity(a.quantity)
                    : sweeps::is_spectral(spec.param) ? sweeps::Quantity::occupation
                    : spec.param == sweeps::SweptParam::phi ? sweeps::Quantity::n_visible
                                                            : sweeps::Quantity::visibility;
    spec.range.min = detail::parse_swept_value(spec.param, "--min", a.min);
    spec.range.max = detail::parse_swept_value(spec.param, "--max", a.max);
    if (a.scale != "linear" && a.scale != "log") throw UsageError("--scale: linear or log");
    spec.range.scale = a.scale == "log" ? sweeps::Scale::log : sweeps::Scale::linear;
  } else if (!a.param.empty() || !a.min.empty() || !a.max.empty() || !a.quantity.empty()) {
    throw UsageError("--param, --quantity, --min and --max apply to --target custom only");
  }
  if (a.count != 0) spec.range.count = a.count;

  if (!a.xi.empty()) spec.fixed.xi = units::parse_number("--xi", a.xi);
  const double kappa = detail::resolve_kappa(a.kappa, a.transmissivity);
  if (kappa >= 0.0) spec.fixed.kappa = kappa;
  if (!a.phi.empty()) spec.fixed.phi = units::parse_angle("--phi", a.phi);
  if (!a.n_i.empty()) spec.fixed.n_th_i = units::parse_number("--n-i", a.n_i);
  if (!a.n_c.empty()) spec.fixed.n_th_c = units::parse_number("--n-c", a.n_c);
  if (!a.temp.empty()) spec.temperature = units::parse_temperature("--temp", a.temp);
  if (!a.lambda.empty()) spec.wavelength = units::parse_length("--lambda", a.lambda);

  std::vector<sweeps::Engine> requested;
  for (const auto& name : units::split_list(a.engines)) requested.push_back(sweeps::parse_engine(name));
  spec.engines = {sweeps::Engine::analytic};
  for (auto e : {sweeps::Engine::gaussian, sweeps::Engine::fock}) {
    if (std::find(requested.begin(), requested.end(), e) != requested.end()) spec.engines.push_back(e);
  }
  spec.cutoff = a.cutoff;
  return spec;
}

inline int cmd_sweep(const SweepArgs& a, std::ostream& out) {
  const auto spec = build_sweep_spec(a);
  if (!a.plot_path.empty()) {
    const auto dot = a.plot_path.rfind('.');
    if (dot == std::string::npos || a.plot_path.substr(dot) != ".svg") {
      throw UsageError("--plot: only .svg output is supported");
    }
  }
  const auto result = sweeps::run_sweep(spec);
  {
    std::ofstream file(a.out_path, std::ios::binary);
    if (!file) throw IoError("--out: cannot write '" + a.out_path + "'");
    sweeps::write_csv(result, file, !a.no_meta);
    if (!file) throw IoError("--out: write to '" + a.out_path + "' failed");
  }
  if (!a.plot_path.empty()) {
    std::ofstream file(a.plot_path, std::ios::binary);
    if (!file) throw IoError("--plot: cannot write '" + a.plot_path + "'");
    plot::write_svg(result, file);
    if (!file) throw IoError("--plot: write to '" + a.plot_path + "' failed");
  }
  out << "wrote " << result.rows.size() << " rows (" << sweeps::to_string(spec.target) << ") to "
      << a.out_path << '\n';
  return exit_ok;
}

struct VerifyArgs {
  std::string xi, kappa, phi, n_i, n_c;
  std::size_t cutoff = fock::default_cutoff;
  std::size_t dimension_limit = fock::default_dimension_limit;
  bool no_convergence = false;
};

inline void print_verify_report(const sweeps::VerifyReport& r, std::ostream& out) {
  auto verdict = [](bool ok) { return ok ? "PASS" : "FAIL"; };
  out << std::setprecision(6);
  out << "grid points: " << r.points.size() << ", fock cutoff " << r.grid.cutoff << '\n';
  out << verdict(r.gaussian_ok) << "  gaussian vs analytic  max rel. discrepancy "
      << r.max_gaussian_error << " (tol " << sweeps::gaussian_tolerance << ")\n";
  if (r.grid.include_fock) {
    out << verdict(r.fock_ok) << "  fock vs analytic      max rel. discrepancy " << r.max_fock_error
        << " (tol " << sweeps::fock_tolerance << ")\n";
    if (r.convergence_checked) {
      out << verdict(r.convergence_ok) << "  fock convergence      cutoff " << r.grid.cutoff + 2
          << " discrepancy " << r.max_fock_refined_error << " <= cutoff " << r.grid.cutoff << " discrepancy "
          << r.max_fock_error << '\n';
    } else {
      out << "SKIP  fock convergence      cutoff " << r.grid.cutoff + 2 << " not run\n";
    }
  }
  if (r.passed()) return;

  std::vector<const sweeps::PointReport*> worst;
  for (const auto& p : r.points) worst.push_back(&p);
  auto key = [&](const sweeps::PointReport* p) {
    return std::max(p->gaussian_error / sweeps::gaussian_tolerance,
                    p->fock_error.value_or(0.0) / sweeps::fock_tolerance);
  };
  std::sort(worst.begin(), worst.end(), [&](auto* a, auto* b) { return key(a) > key(b); });
  out << "worst offenders:\n";
  for (std::size_t k = 0; k < std::min<std::size_t>(5, worst.size()); ++k) {
    const auto& p = *worst[k];
    out << "  xi=" << p.params.xi << " phi=" << p.params.phi << " kappa=" << p.params.kappa
        << " n_i=" << p.params.n_th_i << " n_c=" << p.params.n_th_c << "  analytic=" << p.analytic
        << " gaussian=" << p.gaussian << " (" << p.gaussian_error << ")";
    if (p.fock) out << " fock=" << *p.fock << " (" << *p.fock_error << ")";
    out << '\n';
  }
  if (r.grid.include_fock && (!r.fock_ok || !r.convergence_ok)) {
    out << "truncation diagnosis: discarded thermal tail up to " << r.max_thermal_truncation
        << ", top Fock level population up to " << r.max_top_level_population << " at cutoff "
        << r.grid.cutoff << "; increase --cutoff\n";
  }
}

inline int cmd_verify(const VerifyArgs& a, std::ostream& out) {
  sweeps::GridSpec grid;
  if (!a.xi.empty()) grid.xi = units::parse_list("--xi", a.xi, units::parse_number);
  if (!a.kappa.empty()) grid.kappa = units::parse_list("--kappa", a.kappa, units::parse_angle);
  if (!a.phi.empty()) grid.phi = units::parse_list("--phi", a.phi, units::parse_angle);
  if (!a.n_i.empty()) grid.n_i = units::parse_list("--n-i", a.n_i, units::parse_number);
  if (!a.n_c.empty()) grid.n_c = units::parse_list("--n-c", a.n_c, units::parse_number);
  grid.cutoff = a.cutoff;
  grid.dimension_limit = a.dimension_limit;
  grid.convergence_check = !a.no_convergence;
  const auto report = sweeps::verify_engines(grid);
  print_verify_report(report, out);
  return report.passed() ? exit_ok : exit_verification_failed;
}

/// Runs one command line (without the program name).
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Thermally seeded nonlinear interferometer: radiometry, visibility, sweeps, "
               "cross-engine verification",
               "iup"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  BlackbodyArgs bb;
  auto* bb_cmd = app.add_subcommand("blackbody", "Thermal occupation, Planck density, Wien peak, band background");
  bb_cmd->add_option("--wavelength", bb.wavelength, "Wavelength, e.g. 8um");
  bb_cmd->add_option("--omega", bb.omega, "Angular frequency, e.g. 2.35e14rad/s");
  bb_cmd->add_option("--wavenumber", bb.wavenumber, "Wavenumber, e.g. 1205cm-1");
  bb_cmd->add_option("--temp", bb.temperature, "Temperature, e.g. 300K")->required();
  bb_cmd->add_option("--band", bb.band, "Detector band, e.g. 1176cm-1:1234cm-1");
  bb_cmd->add_option("--area", bb.area, "Detector area, e.g. 1mm2");

  VisibilityArgs vis;
  auto* vis_cmd = app.add_subcommand("visibility", "Visible photon number or fringe visibility");
  vis_cmd->add_option("--xi", vis.xi, "Parametric gain")->required();
  vis_cmd->add_option("--kappa", vis.kappa, "Beam-splitter angle, e.g. 0.05pi");
  vis_cmd->add_option("--transmissivity", vis.transmissivity, "Beam-splitter transmissivity cos^2(kappa)");
  vis_cmd->add_option("--n-i", vis.n_i, "Seed occupation of mode i");
  vis_cmd->add_option("--n-c", vis.n_c, "Seed occupation of mode i'");
  vis_cmd->add_option("--lambda", vis.lambda, "IR wavelength for temperature-derived occupations");
  vis_cmd->add_option("--temp-i", vis.temp_i, "Temperature seeding mode i");
  vis_cmd->add_option("--temp-c", vis.temp_c, "Temperature seeding mode i'");
  vis_cmd->add_option("--phi", vis.phi, "Phase; prints N_v at this phase instead of the visibility");
  vis_cmd->add_option("--engine", vis.engine, "analytic, gaussian or fock (with --phi)");
  vis_cmd->add_option("--cutoff", vis.cutoff, "Fock cutoff for --engine fock");
  vis_cmd->add_flag("--scan", vis.scan, "Also locate the extrema by a phase scan");

  SweepArgs sw;
  auto* sw_cmd = app.add_subcommand("sweep", "Regenerate a figure panel or run a custom sweep as CSV");
  sw_cmd->add_option("--target", sw.target, "fig2a, fig2b, fig3a, fig3b, fig3c, fig3d or custom")->required();
  sw_cmd->add_option("--engines", sw.engines, "Comma-separated subset of analytic,gaussian,fock");
  sw_cmd->add_option("--out", sw.out_path, "CSV output path")->required();
  sw_cmd->add_option("--plot", sw.plot_path, "Optional SVG plot path");
  sw_cmd->add_flag("--no-meta", sw.no_meta, "Omit the # metadata lines");
  sw_cmd->add_option("--cutoff", sw.cutoff, "Fock cutoff");
  sw_cmd->add_option("--count", sw.count, "Number of sweep points");
  sw_cmd->add_option("--param", sw.param, "Custom: swept parameter");
  sw_cmd->add_option("--quantity", sw.quantity, "Custom: occupation, visibility or n_visible");
  sw_cmd->add_option("--min", sw.min, "Custom: range start");
  sw_cmd->add_option("--max", sw.max, "Custom: range end");
  sw_cmd->add_option("--scale", sw.scale, "Custom: linear or log");
  sw_cmd->add_option("--xi", sw.xi, "Fixed parametric gain");
  sw_cmd->add_option("--kappa", sw.kappa, "Fixed beam-splitter angle");
  sw_cmd->add_option("--transmissivity", sw.transmissivity, "Fixed transmissivity");
  sw_cmd->add_option("--phi", sw.phi, "Fixed phase");
  sw_cmd->add_option("--n-i", sw.n_i, "Fixed occupation of mode i");
  sw_cmd->add_option("--n-c", sw.n_c, "Fixed occupation of mode i'");
  sw_cmd->add_option("--temp", sw.temp, "Fixed temperature for occupation sweeps");
  sw_cmd->add_option("--lambda", sw.lambda, "Fixed wavelength for occupation sweeps");

  VerifyArgs vf;
  auto* vf_cmd = app.add_subcommand("verify", "Cross-check the analytic, Gaussian and Fock engines");
  vf_cmd->add_option("--xi", vf.xi, "Comma-separated gains");
  vf_cmd->add_option("--kappa", vf.kappa, "Comma-separated beam-splitter angles");
  vf_cmd->add_option("--phi", vf.phi, "Comma-separated phases");
  vf_cmd->add_option("--n-i", vf.n_i, "Comma-separated mode-i occupations");
  vf_cmd->add_option("--n-c", vf.n_c, "Comma-separated mode-i' occupations");
  vf_cmd->add_option("--cutoff", vf.cutoff, "Fock cutoff d");
  vf_cmd->add_option("--dimension-limit", vf.dimension_limit, "Upper bound on d^3");
  vf_cmd->add_flag("--no-convergence", vf.no_convergence, "Skip the cutoff+2 run");

  try {
    args = detail::expand_config(std::move(args));
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return exit_ok;
    }
    err << "error: " << e.what() << '\n';
    return exit_usage;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return exit_io;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_usage;
  }

  try {
    if (*bb_cmd) return cmd_blackbody(bb, out);
    if (*vis_cmd) return cmd_visibility(vis, out, err);
    if (*sw_cmd) return cmd_sweep(sw, out);
    if (*vf_cmd) return cmd_verify(vf, out);
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return exit_io;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return exit_usage;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return exit_usage;
  }
  return exit_usage;
}

}  // namespace iup::cli
