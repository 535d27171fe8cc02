#include "cli.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "floquet/errors.hpp"
#include "floquet/model.hpp"
#include "floquet/observables.hpp"
#include "floquet/solver.hpp"
#include "floquet/static_oracle.hpp"
#include "floquet/sweep.hpp"

namespace floquet {
namespace {

struct Options {
  std::optional<double> e0, f0, omega, phi0, l, d, up;
  std::optional<double> min, max;
  std::optional<int> steps;
  double tol = kDefaultTolerance;
  int n_max = kDefaultNMax;
  int threads = 0;
  std::string out;
  std::string format = "csv";
  std::string axis = "e0";
  bool log_spacing = false;

  std::optional<double> x_min, x_max;
  int nx = 800;
  int nt_per_period = 128;
  int periods = 2;

  std::optional<double> domain;
  int grid = 2000;
  double threshold = kDefaultLocalizationThreshold;
  double emax = 0.0;
  std::string states_out;
  int states = 6;

  int coarse = 4000;
  double prominence = kDefaultMinProminence;
  std::string resonances_out;

  int window = 0;

  double value = 0.0;
  std::string unit;
};

template <class T>
T need(const std::optional<T>& v, const char* flag) {
  if (!v) throw ValidationError(std::string("missing required option ") + flag);
  return *v;
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot open output file " + path);
  f << text;
  if (!f) throw Error("failed writing output file " + path);
}

void check_format(const Options& o, bool json_allowed) {
  if (o.format == "csv") return;
  if (o.format == "json" && json_allowed) return;
  throw ValidationError("unsupported --format '" + o.format + "'");
}

SweepSpec sweep_spec(const Options& o, SweepAxis axis) {
  SweepSpec s;
  s.axis = axis;
  s.f0 = need(o.f0, "--f0");
  s.omega = need(o.omega, "--omega");
  s.l = need(o.l, "--L");
  s.tol = o.tol;
  s.n_max = o.n_max;
  s.threads = o.threads;
  s.log_spacing = o.log_spacing;
  s.steps = need(o.steps, "--steps");
  switch (axis) {
    case SweepAxis::E0:
      s.min = need(o.min, "--min");
      s.max = need(o.max, "--max");
      s.phi0 = o.phi0.value_or(0.0);
      s.d = need(o.d, "--d");
      break;
    case SweepAxis::Phi0:
      s.min = o.min.value_or(0.0);
      s.max = o.max.value_or(kTwoPi);
      s.e0 = need(o.e0, "--e0");
      s.d = need(o.d, "--d");
      break;
    case SweepAxis::D:
      s.min = need(o.min, "--min");
      s.max = need(o.max, "--max");
      s.e0 = need(o.e0, "--e0");
      s.phi0 = o.phi0.value_or(0.0);
      break;
  }
  s.validate();
  return s;
}

std::string run_spectrum(const Options& o, SweepAxis axis) {
  check_format(o, true);
  const SweepSpec spec = sweep_spec(o, axis);
  const auto records = run_sweep(spec);
  std::ostringstream os;
  if (o.format == "json") {
    write_spectrum_json(os, spec, records);
  } else {
    write_spectrum_csv(os, records);
  }
  int failed = 0;
  for (const auto& r : records) failed += r.ok() ? 0 : 1;
  if (failed > 0) std::cerr << "warning: " << failed << " of " << records.size() << " points failed\n";
  return os.str();
}

struct Problem {
  BeamParams beam;
  FieldParams field;
  Geometry geom;
};

Problem problem(const Options& o) {
  return {BeamParams(need(o.e0, "--e0")), FieldParams(need(o.f0, "--f0"), need(o.omega, "--omega"), o.phi0.value_or(0.0)),
          Geometry(need(o.l, "--L"), need(o.d, "--d"))};
}

ScatteringSolution solve_problem(const Options& o, const Problem& p) {
  if (o.window > 0) return solve_window(p.beam, p.field, p.geom, o.window);
  return solve_adaptive(p.beam, p.field, p.geom, o.tol, kDefaultNStart, o.n_max);
}

std::string run_current_map(const Options& o) {
  check_format(o, false);
  const Problem p = problem(o);
  const double l = p.geom.l();
  const double x_min = o.x_min.value_or(-l);
  const double x_max = o.x_max.value_or(3.5 * l + p.geom.d());
  if (!(x_max > x_min)) throw ValidationError("current map needs x-max > x-min");
  if (o.nx < 2 || o.nt_per_period < 1 || o.periods < 1) {
    throw ValidationError("current map needs nx >= 2, nt-per-period >= 1 and periods >= 1");
  }
  const ScatteringSolution sol = solve_problem(o, p);
  std::ostringstream os;
  write_field_map_csv(os, field_map(sol, x_min, x_max, o.nx, o.periods, o.nt_per_period * o.periods + 1, o.threads));
  return os.str();
}

std::string run_channels(const Options& o) {
  check_format(o, false);
  const Problem p = problem(o);
  const ScatteringSolution sol = solve_problem(o, p);
  std::ostringstream os;
  write_channels_csv(os, sol);
  std::cerr << "T_avg=" << format_number(sol.t_avg) << " R_avg=" << format_number(sol.r_avg)
            << " residual=" << format_number(sol.unitarity_residual) << " n_used=" << sol.n_used << '\n';
  return os.str();
}

StaticBarrierSpec barrier(const Options& o) {
  StaticBarrierSpec s;
  if (o.up) {
    s.up = *o.up;
  } else {
    const FieldParams f(need(o.f0, "--up (or --f0)"), need(o.omega, "--up (or --omega)"));
    s.up = derive_scales(f).up;
  }
  s.l = need(o.l, "--L");
  s.d = need(o.d, "--d");
  s.validate();
  return s;
}

std::string run_static_spectrum(const Options& o) {
  check_format(o, false);
  const StaticBarrierSpec spec = barrier(o);
  const double lo = need(o.min, "--min");
  const double hi = need(o.max, "--max");
  const int steps = need(o.steps, "--steps");
  if (!(lo > 0.0) || !(hi > lo) || steps < 2) throw ValidationError("static spectrum needs 0 < min < max and steps >= 2");
  std::vector<double> e(static_cast<std::size_t>(steps));
  std::vector<double> t(e.size());
  for (int i = 0; i < steps; ++i) {
    e[static_cast<std::size_t>(i)] = i == steps - 1 ? hi : lo + (hi - lo) * i / (steps - 1);
    t[static_cast<std::size_t>(i)] = static_transmission(e[static_cast<std::size_t>(i)], spec);
  }
  const auto peaks = find_resonances(spec, lo, hi, o.coarse, o.prominence);
  if (!o.resonances_out.empty()) {
    std::ostringstream rs;
    rs << "energy,T_peak\n";
    for (const auto& r : peaks) rs << format_number(r.energy) << ',' << format_number(r.t_peak) << '\n';
    write_output(o.resonances_out, rs.str());
  }
  for (const auto& r : peaks) std::cerr << "resonance " << format_number(r.energy) << '\n';
  std::ostringstream os;
  write_static_spectrum_csv(os, e, t);
  return os.str();
}

std::string run_eigenstates(const Options& o) {
  check_format(o, false);
  const StaticBarrierSpec spec = barrier(o);
  const double domain = o.domain.value_or(5.0 * spec.total_width());
  if (!(o.threshold > 0.0 && o.threshold <= 1.0)) throw ValidationError("threshold must lie in (0, 1]");
  const EigenResult res = eigenstates_periodic(spec, domain, o.grid, o.threshold, o.emax);
  if (!o.states_out.empty()) {
    std::ostringstream ss;
    write_eigen_states_csv(ss, res, o.states);
    write_output(o.states_out, ss.str());
  }
  std::ostringstream os;
  write_eigen_summary_csv(os, res);
  return os.str();
}

std::string run_convert(const Options& o) {
  const double v = convert_units(o.value, parse_unit_kind(o.unit));
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g\n", v);
  return buf;
}

}  // namespace

int cli_main(const std::vector<std::string>& argv) {
  CLI::App app{"Floquet scattering of a beam on two phase-shifted oscillating fields (atomic units)", "floquet"};
  app.require_subcommand(1);
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.set_config("--config", "", "key=value file using the long option names; flags override it");

  Options o;
  app.add_option("--e0", o.e0, "beam energy E0");
  app.add_option("--f0", o.f0, "field amplitude F0");
  app.add_option("--omega", o.omega, "angular frequency");
  app.add_option("--phi0", o.phi0, "phase of the second field (rad)");
  app.add_option("--L", o.l, "length of each field region");
  app.add_option("--d", o.d, "field-free separation");
  app.add_option("--up", o.up, "static barrier height (default F0^2/(4 omega^2))");
  app.add_option("--tol", o.tol, "unitarity tolerance")->capture_default_str();
  app.add_option("--n-max", o.n_max, "largest channel window half-width")->capture_default_str();
  app.add_option("--window", o.window, "fixed channel window half-width instead of the adaptive one");
  app.add_option("--threads", o.threads, "worker threads, 0 = all cores")->envname("FLOQUET_THREADS");
  app.add_option("--out", o.out, "output path (default stdout)");
  app.add_option("--format", o.format, "csv or json")->capture_default_str();
  app.add_option("--min", o.min, "sweep start");
  app.add_option("--max", o.max, "sweep end");
  app.add_option("--steps", o.steps, "number of sweep points");
  app.add_option("--axis", o.axis, "swept parameter: e0, phi0 or d")->capture_default_str();
  app.add_flag("--log", o.log_spacing, "geometric sweep grid");
  app.add_option("--x-min", o.x_min, "current map start (default -L)");
  app.add_option("--x-max", o.x_max, "current map end (default 3.5L + d)");
  app.add_option("--nx", o.nx, "current map points in x")->capture_default_str();
  app.add_option("--nt-per-period", o.nt_per_period, "current map time samples per period")->capture_default_str();
  app.add_option("--periods", o.periods, "current map duration in field periods")->capture_default_str();
  app.add_option("--domain", o.domain, "ring length (default 5 (2L + d))");
  app.add_option("--grid", o.grid, "ring grid points")->capture_default_str();
  app.add_option("--threshold", o.threshold, "well weight marking a localized state")->capture_default_str();
  app.add_option("--emax", o.emax, "keep eigenstates below this energy (0 = all)");
  app.add_option("--states-out", o.states_out, "also write psi(x) of the lowest states here");
  app.add_option("--states", o.states, "number of states for --states-out")->capture_default_str();
  app.add_option("--coarse", o.coarse, "resonance search grid points")->capture_default_str();
  app.add_option("--prominence", o.prominence, "minimum resonance prominence")->capture_default_str();
  app.add_option("--resonances-out", o.resonances_out, "write refined resonances here");

  auto* spectrum = app.add_subcommand("spectrum", "<T>, <R> and jT_n along one axis (default e0)")->fallthrough();
  auto* phase = app.add_subcommand("phase-sweep", "<T> versus phi0, default range [0, 2pi]")->fallthrough();
  auto* cmap = app.add_subcommand("current-map", "j(x,t) and rho(x,t) over a few periods")->fallthrough();
  auto* channels = app.add_subcommand("channels", "channel table with per-channel currents")->fallthrough();
  auto* stat = app.add_subcommand("static-spectrum", "static double-barrier T(E)")->fallthrough();
  auto* eig = app.add_subcommand("eigenstates", "ring eigenstates of the static double barrier")->fallthrough();
  auto* conv = app.add_subcommand("convert", "unit conversion")->fallthrough();
  conv->add_option("value", o.value, "value to convert")->required();
  conv->add_option("kind", o.unit, "wavelength_nm_to_omega_au, ev_to_au or au_to_ev")->required();

  std::vector<std::string> args(argv.begin() + (argv.empty() ? 0 : 1), argv.end());
  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }

  try {
    std::string text;
    if (*spectrum) {
      text = run_spectrum(o, parse_axis(o.axis));
    } else if (*phase) {
      text = run_spectrum(o, SweepAxis::Phi0);
    } else if (*cmap) {
      text = run_current_map(o);
    } else if (*channels) {
      text = run_channels(o);
    } else if (*stat) {
      text = run_static_spectrum(o);
    } else if (*eig) {
      text = run_eigenstates(o);
    } else if (*conv) {
      text = run_convert(o);
    }
    write_output(o.out, text);
    return 0;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace floquet
