#include "floquet/observables.hpp"

#include <algorithm>
#include <cmath>

#include "floquet/errors.hpp"
#include "floquet/parallel.hpp"

namespace floquet {
namespace {

const cplx kI(0.0, 1.0);

// Gordon-Volkov state for wavenumber q and phase phi, without the spatial
// plane wave exp(+-i q x) and without exp(-i E t):
//   exp(-i [alpha sin 2(wt+phi) - beta(q) cos(wt+phi)]) exp(-i gamma x sin(wt+phi))
cplx volkov_envelope(const DerivedScales& sc, cplx beta, double theta, double x) {
  const cplx arg = sc.alpha * std::sin(2.0 * theta) - beta * std::cos(theta) + sc.gamma * x * std::sin(theta);
  return std::exp(-kI * arg);
}

double sign_of(double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

}  // namespace

double ChannelCurrents::jt(int n) const {
  if (n < n0 || index.empty() || n > index.back()) return 0.0;
  return transmitted[static_cast<std::size_t>(n - n0)];
}

double ChannelCurrents::jr(int n) const {
  if (n < n0 || index.empty() || n > index.back()) return 0.0;
  return reflected[static_cast<std::size_t>(n - n0)];
}

ChannelCurrents channel_currents(const ScatteringSolution& sol) {
  ChannelCurrents cc;
  const ChannelSet& ch = sol.channels;
  const double k0 = sol.beam.k0();
  cc.n0 = ch.n_max() + 1;
  for (const Channel& c : ch.channels()) {
    if (!c.propagating) continue;
    cc.n0 = std::min(cc.n0, c.n);
    const double ratio = c.k.real() / k0;
    const double jr = ratio * std::norm(sol.coefficient(Family::R, c.n));
    const double jt = ratio * std::norm(sol.coefficient(Family::T, c.n));
    cc.index.push_back(c.n);
    cc.reflected.push_back(jr);
    cc.transmitted.push_back(jt);
  }
  // Sum from the smallest contributions up for a reproducible total.
  for (auto it = cc.transmitted.rbegin(); it != cc.transmitted.rend(); ++it) cc.t_avg += *it;
  for (auto it = cc.reflected.rbegin(); it != cc.reflected.rend(); ++it) cc.r_avg += *it;
  return cc;
}

Region region_of(const Geometry& geom, double x) {
  const double l = geom.l();
  const double d = geom.d();
  if (x < 0.0) return Region::Incident;
  if (x < l) return Region::FirstField;
  if (x < l + d) return Region::Gap;
  if (x < 2.0 * l + d) return Region::SecondField;
  return Region::Transmitted;
}

double region_origin(const Geometry& geom, Region region) {
  switch (region) {
    case Region::Incident:
    case Region::FirstField:
      return 0.0;
    case Region::Gap:
      return geom.l();
    case Region::SecondField:
      return geom.l() + geom.d();
    case Region::Transmitted:
      return 2.0 * geom.l() + geom.d();
  }
  return 0.0;
}

PointValue evaluate_region(const ScatteringSolution& sol, Region region, double x, double t) {
  const ChannelSet& ch = sol.channels;
  const DerivedScales& sc = sol.scales;
  const double w = ch.omega();
  const double e0 = ch.e0();
  const double l = sol.geometry.l();
  const double d = sol.geometry.d();
  const double theta1 = w * t;
  const double theta2 = w * t + sol.field.phi0();

  PointValue out{cplx(0.0), cplx(0.0)};
  switch (region) {
    case Region::Incident: {
      const double k0 = sol.beam.k0();
      const cplx inc = std::exp(kI * (k0 * x - e0 * t));
      out.psi = inc;
      out.dpsi = kI * k0 * inc;
      for (const Channel& c : ch.channels()) {
        const cplx term = sol.coefficient(Family::R, c.n) * std::exp(-kI * (c.k * x + c.energy * t));
        out.psi += term;
        out.dpsi += -kI * c.k * term;
      }
      break;
    }
    case Region::FirstField:
    case Region::SecondField: {
      const bool first = region == Region::FirstField;
      const double theta = first ? theta1 : theta2;
      const Family right = first ? Family::A : Family::C;
      const Family left = first ? Family::B : Family::D;
      const cplx slope_field = -kI * sc.gamma * std::sin(theta);
      for (const Channel& c : ch.channels()) {
        const cplx time = std::exp(-kI * c.energy * t);
        const cplx fwd = sol.coefficient(right, c.n) * volkov_envelope(sc, c.beta_plus, theta, x) *
                         std::exp(kI * c.q * x) * time;
        const cplx bwd = sol.coefficient(left, c.n) * volkov_envelope(sc, c.beta_minus, theta, x) *
                         std::exp(-kI * c.q * (x - l)) * time;
        out.psi += fwd + bwd;
        out.dpsi += fwd * (kI * c.q + slope_field) + bwd * (-kI * c.q + slope_field);
      }
      if (!first) {
        const cplx gap = std::exp(-kI * sc.gamma * l * std::sin(theta1));
        out.psi *= gap;
        out.dpsi *= gap;
      }
      break;
    }
    case Region::Gap: {
      for (const Channel& c : ch.channels()) {
        const cplx time = std::exp(-kI * c.energy * t);
        const cplx fwd = sol.coefficient(Family::U, c.n) * std::exp(kI * c.k * x) * time;
        const cplx bwd = sol.coefficient(Family::V, c.n) * std::exp(-kI * c.k * (x - d)) * time;
        out.psi += fwd + bwd;
        out.dpsi += kI * c.k * (fwd - bwd);
      }
      const cplx phase = std::exp(-kI * sc.gamma * l * std::sin(theta1));
      out.psi *= phase;
      out.dpsi *= phase;
      break;
    }
    case Region::Transmitted: {
      for (const Channel& c : ch.channels()) {
        const cplx term = sol.coefficient(Family::T, c.n) * std::exp(kI * (c.k * x - c.energy * t));
        out.psi += term;
        out.dpsi += kI * c.k * term;
      }
      const cplx phase = std::exp(-kI * sc.gamma * l * (std::sin(theta1) + std::sin(theta2)));
      out.psi *= phase;
      out.dpsi *= phase;
      break;
    }
  }
  return out;
}

namespace {
PointValue evaluate_global(const ScatteringSolution& sol, double x, double t) {
  const Region r = region_of(sol.geometry, x);
  return evaluate_region(sol, r, x - region_origin(sol.geometry, r), t);
}
}  // namespace

cplx wavefunction(const ScatteringSolution& sol, double x, double t) { return evaluate_global(sol, x, t).psi; }

double current_density(const ScatteringSolution& sol, double x, double t) {
  const PointValue v = evaluate_global(sol, x, t);
  return (std::conj(v.psi) * v.dpsi).imag();
}

double density(const ScatteringSolution& sol, double x, double t) {
  return std::norm(evaluate_global(sol, x, t).psi);
}

double boundary_residual(const ScatteringSolution& sol, int samples) {
  const double l = sol.geometry.l();
  const double d = sol.geometry.d();
  struct Edge {
    Region left;
    double left_x;
    Region right;
  };
  const Edge edges[] = {
      {Region::Incident, 0.0, Region::FirstField},
      {Region::FirstField, l, Region::Gap},
      {Region::Gap, d, Region::SecondField},
      {Region::SecondField, l, Region::Transmitted},
  };
  const double tau = sol.channels.tau();
  double value_scale = 0.0;
  double slope_scale = 0.0;
  double value_gap = 0.0;
  double slope_gap = 0.0;
  for (const Edge& e : edges) {
    for (int i = 0; i < samples; ++i) {
      const double t = tau * i / samples;
      const PointValue a = evaluate_region(sol, e.left, e.left_x, t);
      const PointValue b = evaluate_region(sol, e.right, 0.0, t);
      value_scale = std::max({value_scale, std::abs(a.psi), std::abs(b.psi)});
      slope_scale = std::max({slope_scale, std::abs(a.dpsi), std::abs(b.dpsi)});
      value_gap = std::max(value_gap, std::abs(a.psi - b.psi));
      slope_gap = std::max(slope_gap, std::abs(a.dpsi - b.dpsi));
    }
  }
  const double rv = value_scale > 0.0 ? value_gap / value_scale : value_gap;
  const double rs = slope_scale > 0.0 ? slope_gap / slope_scale : slope_gap;
  return std::max(rv, rs);
}

int force_sign(const ScatteringSolution& sol, double x, double t) {
  const double w = sol.channels.omega();
  switch (region_of(sol.geometry, x)) {
    case Region::FirstField:
      return static_cast<int>(sign_of(-std::cos(w * t)));
    case Region::SecondField:
      return static_cast<int>(sign_of(-std::cos(w * t + sol.field.phi0())));
    default:
      return 0;
  }
}

FieldMap field_map(const ScatteringSolution& sol, double x_min, double x_max, int nx, int periods, int nt,
                   int threads) {
  if (nx < 2 || nt < 2) throw ValidationError("field map needs nx >= 2 and nt >= 2");
  if (!(x_max > x_min)) throw ValidationError("field map needs x_max > x_min");
  if (periods < 1) throw ValidationError("field map needs at least one period");
  FieldMap map;
  map.x.resize(static_cast<std::size_t>(nx));
  map.t.resize(static_cast<std::size_t>(nt));
  for (int i = 0; i < nx; ++i) map.x[static_cast<std::size_t>(i)] = x_min + (x_max - x_min) * i / (nx - 1);
  const double t_end = periods * sol.channels.tau();
  for (int i = 0; i < nt; ++i) map.t[static_cast<std::size_t>(i)] = t_end * i / (nt - 1);
  const std::size_t cells = map.x.size() * map.t.size();
  map.j.resize(cells);
  map.rho.resize(cells);
  map.force_sign.resize(cells);
  parallel_for(static_cast<std::size_t>(nt), threads, [&](std::size_t it) {
    const double t = map.t[it];
    for (std::size_t ix = 0; ix < map.x.size(); ++ix) {
      const PointValue v = evaluate_global(sol, map.x[ix], t);
      const std::size_t k = map.at(it, ix);
      map.j[k] = (std::conj(v.psi) * v.dpsi).imag();
      map.rho[k] = std::norm(v.psi);
      map.force_sign[k] = force_sign(sol, map.x[ix], t);
    }
  });
  return map;
}

}  // namespace floquet
