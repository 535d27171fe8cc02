// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any FAIL.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "floquet/errors.hpp"
#include "floquet/observables.hpp"
#include "floquet/solver.hpp"
#include "floquet/static_oracle.hpp"
#include "floquet/sweep.hpp"

using namespace floquet;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

const FieldParams kFig3Field(0.1, 0.2, kPi);
const Geometry kFig3Geom(10.0, 30.0);

double fig3_t(double e0) { return solve_adaptive(BeamParams(e0), kFig3Field, kFig3Geom).t_avg; }

SweepSpec fig3_sweep() {
  SweepSpec s;
  s.min = 0.005;
  s.max = 0.4;
  s.steps = 400;
  s.f0 = 0.1;
  s.omega = 0.2;
  s.phi0 = kPi;
  s.l = 10.0;
  s.d = 30.0;
  return s;
}

const std::vector<SpectrumRecord>& fig3_records() {
  static const std::vector<SpectrumRecord> recs = run_sweep(fig3_sweep());
  return recs;
}

double golden_max(const std::function<double(double)>& f, double a, double b, double tol) {
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

Outcome unitarity() {
  SweepSpec s = fig3_sweep();
  s.steps = 50;
  s.log_spacing = true;
  s.threads = 1;
  const auto start = std::chrono::steady_clock::now();
  const std::vector<SpectrumRecord> recs = run_sweep(s);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  int converged = 0;
  int small = 0;
  double worst = 0.0;
  for (const SpectrumRecord& r : recs) {
    if (r.ok() && r.residual <= 1e-6) ++converged;
    if (r.ok() && r.n_used <= 25) ++small;
    if (r.ok()) worst = std::max(worst, r.residual);
  }
  const bool pass = converged == 50 && small >= 45 && secs <= 60.0;
  return {pass, std::to_string(converged) + "/50 converged, worst residual " + fmt("%.2e", worst) + ", " +
                    std::to_string(small) + "/50 with n_used <= 25, " + fmt("%.2f s single-threaded", secs)};
}

Outcome fig7() {
  const Geometry geom(10.0, 10.0);
  const double hi = solve_adaptive(BeamParams(0.06), FieldParams(0.1, 0.2, 3.3772), geom).t_avg;
  const double lo = solve_adaptive(BeamParams(0.06), FieldParams(0.1, 0.2, 0.7226), geom).t_avg;
  const bool pass = std::fabs(hi - 0.8941) <= 0.01 && std::fabs(lo - 0.392) <= 0.01;
  return {pass, "T(3.3772) = " + fmt("%.6f", hi) + " (0.8941), T(0.7226) = " + fmt("%.6f", lo) + " (0.392)"};
}

Outcome static_resonances() {
  const std::vector<Resonance> res = find_resonances({0.0625, 10.0, 10.0}, 0.005, 0.19);
  std::string detail = std::to_string(res.size()) + " peaks:";
  for (const Resonance& r : res) detail += fmt(" %.6f", r.energy);
  const bool pass = res.size() == 2 && std::fabs(res[0].energy - 0.01926) / 0.01926 <= 0.02 &&
                    std::fabs(res[1].energy - 0.0643) / 0.0643 <= 0.02;
  return {pass, detail + " (0.01926, 0.0643)"};
}

Outcome static_dynamic() {
  const std::vector<SpectrumRecord>& recs = fig3_records();
  // Every static transmission maximum counts as a resonance energy here.
  const std::vector<Resonance> stat = find_resonances({0.0625, 10.0, 30.0}, 0.001, 0.2, 4000, 0.0);
  const double omega = 0.2;
  int peaks = 0;
  double worst = 0.0;
  bool pass = true;
  std::string detail;
  for (std::size_t i = 1; i + 1 < recs.size() && recs[i + 1].x_value < omega; ++i) {
    const double t = recs[i].t_avg;
    if (!(t > recs[i - 1].t_avg && t >= recs[i + 1].t_avg)) continue;
    const double peak = golden_max(fig3_t, recs[i - 1].x_value, recs[i + 1].x_value, 1e-7);
    double best = 1e9;
    for (const Resonance& r : stat) best = std::min(best, std::fabs(r.energy - peak) / r.energy);
    worst = std::max(worst, best);
    if (best > 0.05) pass = false;
    ++peaks;
    detail += fmt(" %.5f", peak) + fmt("(%.1f%%)", 100.0 * best);
  }
  if (peaks == 0) pass = false;
  return {pass, std::to_string(peaks) + " dynamic peaks below omega, nearest static gap:" + detail};
}

Outcome channel_opening() {
  const std::vector<SpectrumRecord>& recs = fig3_records();
  bool closed_below = true;
  bool open_above = false;
  for (const SpectrumRecord& r : recs) {
    if (!r.ok()) continue;
    if (r.x_value < 0.2 && r.jt_at(-1) != 0.0) closed_below = false;
    if (r.x_value > 0.2 && r.x_value < 0.4 && r.jt_at(-1) > 0.0) open_above = true;
  }
  return {closed_below && open_above, std::string("jT[-1] = 0 below omega: ") + (closed_below ? "yes" : "no") +
                                          ", jT[-1] > 0 on (omega, 2 omega): " + (open_above ? "yes" : "no")};
}

Outcome oracle_cross_check() {
  const StaticBarrierSpec spec{0.0625, 10.0, 30.0};
  const EigenResult eig = eigenstates_periodic(spec, 5.0 * spec.total_width(), 2000, kDefaultLocalizationThreshold, 0.1);
  const std::vector<double> loc = eig.localized_energies();
  const std::vector<Resonance> res = find_resonances(spec, 0.001, 0.1, 4000, 0.0);
  bool pass = loc.size() >= 2;
  std::string detail = "d=30: " + std::to_string(loc.size()) + " localized:";
  for (double e : loc) {
    double best = 1e9;
    for (const Resonance& r : res) best = std::min(best, std::fabs(r.energy - e) / r.energy);
    if (best > 0.02) pass = false;
    detail += fmt(" %.6f", e) + fmt("(%.2f%%)", 100.0 * best);
  }

  const StaticBarrierSpec d10{0.0625, 10.0, 10.0};
  const EigenResult e10 = eigenstates_periodic(d10, 5.0 * d10.total_width(), 2000, kDefaultLocalizationThreshold, 0.1);
  const std::vector<double> loc10 = e10.localized_energies();
  detail += "; d=10: " + std::to_string(loc10.size()) + " localized:";
  for (double e : loc10) detail += fmt(" %.6f", e);
  return {pass, detail};
}

Outcome self_consistency() {
  std::vector<std::string> failed;
  std::string detail;
  const ScatteringSolution sol = solve_window(BeamParams(0.1), kFig3Field, kFig3Geom, 41);
  const double tau = sol.channels.tau();
  const double k0 = sol.beam.k0();

  const double br = boundary_residual(sol);
  if (br > 1e-8) failed.push_back("boundary");
  detail += "boundary " + fmt("%.1e", br);

  double cont = 0.0;
  const double h = 1e-3;
  auto d5 = [h](const std::function<double(double)>& f, double x) {
    return (f(x - 2 * h) - 8 * f(x - h) + 8 * f(x + h) - f(x + 2 * h)) / (12 * h);
  };
  for (double x : {-15.0, -3.0, 2.5, 7.5, 14.0, 25.0, 36.0, 44.0, 53.0, 65.0}) {
    for (double t : {0.0, 5.0, 11.0, 23.0}) {
      const double drho = d5([&](double s) { return density(sol, x, s); }, t);
      const double dj = d5([&](double y) { return current_density(sol, y, t); }, x);
      cont = std::max(cont, std::fabs(drho + dj));
    }
  }
  if (cont > 1e-6 * k0 / tau) failed.push_back("continuity");
  detail += ", continuity " + fmt("%.1e", cont) + " (bound " + fmt("%.1e", 1e-6 * k0 / tau) + ")";

  const double t_sum = channel_currents(sol).t_avg;
  double avg_gap = 0.0;
  for (double x : {55.0, 90.0}) {
    double avg = 0.0;
    for (int i = 0; i < 256; ++i) avg += current_density(sol, x, tau * i / 256.0);
    avg_gap = std::max(avg_gap, std::fabs(avg / (256.0 * k0) - t_sum));
  }
  if (avg_gap > 1e-8) failed.push_back("cycle-average");
  detail += ", cycle-average " + fmt("%.1e", avg_gap);

  double period_gap = 0.0;
  const cplx phase = std::exp(cplx(0.0, -0.1 * tau));
  for (double x : {-12.0, 3.0, 9.9, 25.0, 45.0, 52.0, 70.0}) {
    for (double t : {0.0, 4.1, 20.0}) {
      const cplx b = phase * wavefunction(sol, x, t);
      period_gap = std::max(period_gap, std::abs(wavefunction(sol, x, t + tau) - b) / std::max(1.0, std::abs(b)));
    }
  }
  if (period_gap > 1e-10) failed.push_back("periodicity");
  detail += ", periodicity " + fmt("%.1e", period_gap);

  double free_gap = 0.0;
  for (double e : {0.01, 0.1, 0.3}) {
    free_gap = std::max(free_gap, std::fabs(solve_adaptive(BeamParams(e), FieldParams(0.0, 0.2, kPi), kFig3Geom).t_avg - 1.0));
  }
  if (free_gap > 1e-10) failed.push_back("zero-field");
  detail += ", zero field " + fmt("%.1e", free_gap);

  const double up = derive_scales(kFig3Field).up;
  const double t_high = fig3_t(10.0 * up);
  const double t_low = fig3_t(0.1 * up);
  if (!(t_high > 0.99)) failed.push_back("T(10 Up) > 0.99");
  if (!(t_low < 0.05)) failed.push_back("T(0.1 Up) < 0.05");
  detail += ", T(10 Up) = " + fmt("%.4f", t_high) + ", T(0.1 Up) = " + fmt("%.4f", t_low);

  if (!failed.empty()) {
    detail += "; failing:";
    for (const std::string& f : failed) detail += " [" + f + "]";
  }
  return {failed.empty(), detail};
}

Outcome quasiperiodicity() {
  const double lambda = kTwoPi / std::sqrt(2.0 * 0.025);
  auto curve = [](double d) {
    SweepSpec s;
    s.axis = SweepAxis::Phi0;
    s.min = 0.0;
    s.max = kTwoPi;
    s.steps = 64;
    s.e0 = 0.025;
    s.f0 = 0.1;
    s.omega = 0.2;
    s.l = 10.0;
    s.d = d;
    return run_sweep(s);
  };
  bool agree = true;
  double best_depth = 0.0;
  std::string detail;
  for (double d : {10.0, 17.0, 24.0, 31.0}) {
    const std::vector<SpectrumRecord> a = curve(d);
    const std::vector<SpectrumRecord> b = curve(d + 0.5 * lambda);
    double gap = 0.0;
    double lo = 1.0;
    double hi = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      gap = std::max(gap, std::fabs(a[i].t_avg - b[i].t_avg));
      lo = std::min(lo, a[i].t_avg);
      hi = std::max(hi, a[i].t_avg);
    }
    if (!(gap <= 0.1)) agree = false;
    best_depth = std::max(best_depth, hi - lo);
    detail += fmt(" d=%g:", d) + fmt(" gap %.3f", gap) + fmt(" depth %.3f;", hi - lo);
  }
  const bool deep = best_depth >= 0.25;
  detail += std::string(" agreement ") + (agree ? "met" : "NOT met") + ", depth >= 0.25 " + (deep ? "met" : "NOT met");
  return {agree && deep, detail};
}

Outcome fig2_smoke() {
  SweepSpec s;
  s.min = 0.0001;
  s.max = 0.0054;
  s.steps = 30;
  s.f0 = 0.00488;
  s.omega = 0.057322;
  s.phi0 = kPi;
  s.l = 200.0;
  s.d = 400.0;
  const double up = derive_scales(FieldParams(s.f0, s.omega, s.phi0)).up;
  const std::vector<SpectrumRecord> recs = run_sweep(s);
  double worst = 0.0;
  bool all_ok = true;
  for (const SpectrumRecord& r : recs) {
    if (!r.ok() || !(r.residual <= 1e-6)) all_ok = false;
    if (r.ok()) worst = std::max(worst, r.residual);
  }
  int maxima = 0;
  for (std::size_t i = 1; i + 1 < recs.size(); ++i) {
    if (recs[i].t_avg > recs[i - 1].t_avg && recs[i].t_avg > recs[i + 1].t_avg) ++maxima;
  }
  const bool below = s.max < 3.0 * up;
  return {all_ok && maxima >= 5 && below, "30 energies up to " + fmt("%.4g", s.max) + " (3 Up = " + fmt("%.4g", 3.0 * up) +
                                               "), worst residual " + fmt("%.1e", worst) + ", " +
                                               std::to_string(maxima) + " interior maxima"};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    Outcome (*run)();
  };
  const Criterion criteria[] = {
      {"Unitarity (Fig. 3 parameters, 50 log-spaced energies)", unitarity},
      {"Fig. 7 regression", fig7},
      {"Static resonances (up=0.0625, l=10, d=10)", static_resonances},
      {"Static/dynamic agreement (Fig. 3, peaks below omega)", static_dynamic},
      {"Channel opening (n = -1 at E0 = omega)", channel_opening},
      {"Oracle cross-check (ring eigenstates vs resonances)", oracle_cross_check},
      {"Self-consistency suite", self_consistency},
      {"Quasiperiodicity in d (Fig. 6 parameters)", quasiperiodicity},
      {"Large-scale smoke test (Fig. 2 parameters)", fig2_smoke},
  };
  int failures = 0;
  for (const Criterion& c : criteria) {
    Outcome o{false, ""};
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::printf("%s %s: %s\n", o.pass ? "PASS" : "FAIL", c.name, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failures, std::size(criteria));
  return failures == 0 ? 0 : 1;
}
