#include "floquet/solver.hpp"

#include <Eigen/LU>
#include <algorithm>
#include <cmath>
#include <sstream>

#include "floquet/errors.hpp"
#include "floquet/observables.hpp"

namespace floquet {
namespace {

const cplx kI(0.0, 1.0);

double inf_norm(const Eigen::MatrixXcd& m) { return m.rowwise().lpNorm<1>().maxCoeff(); }

// Current carried by the outermost two channels on each side of the window.
double tail_current(const ChannelCurrents& cc, const ChannelSet& channels) {
  double tail = 0.0;
  for (int n : {channels.n_min(), channels.n_min() + 1, channels.n_max() - 1, channels.n_max()}) {
    tail = std::max(tail, cc.jt(n) + cc.jr(n));
  }
  return tail;
}

}  // namespace

cplx ScatteringSolution::conventional(Family f, int n) const {
  const cplx v = coefficient(f, n);
  switch (f) {
    case Family::B:
    case Family::D:
      return v * std::exp(kI * channels.at(n).q * geometry.l());
    case Family::V:
      return v * std::exp(kI * channels.at(n).k * geometry.d());
    default:
      return v;
  }
}

ScatteringSolution solve(const BoundarySystem& system) {
  const Eigen::PartialPivLU<Eigen::MatrixXcd> lu(system.matrix);
  const Eigen::VectorXcd x = lu.solve(system.rhs);

  const auto& u = lu.matrixLU();
  double min_pivot = std::abs(u(0, 0));
  double max_pivot = min_pivot;
  for (int i = 1; i < u.rows(); ++i) {
    min_pivot = std::min(min_pivot, std::abs(u(i, i)));
    max_pivot = std::max(max_pivot, std::abs(u(i, i)));
  }
  if (!(min_pivot > 1e-14 * max_pivot) || !x.allFinite()) {
    throw SingularSystem("boundary system is numerically singular (threshold degeneracy or overflow upstream)");
  }

  const double denom = inf_norm(system.matrix) * x.lpNorm<Eigen::Infinity>() + system.rhs.lpNorm<Eigen::Infinity>();
  const double residual = (system.matrix * x - system.rhs).lpNorm<Eigen::Infinity>() / denom;
  if (!(residual <= kLinearResidualBound)) {
    std::ostringstream msg;
    msg << "linear solve residual " << residual << " exceeds " << kLinearResidualBound;
    throw SingularSystem(msg.str());
  }

  const ChannelSet& ch = system.channels;
  ScatteringSolution sol;
  sol.beam = BeamParams(ch.e0());
  sol.field = FieldParams(ch.f0(), ch.omega(), system.phi0);
  sol.geometry = system.geometry;
  sol.scales = ch.scales();
  sol.channels = ch;
  sol.s_cutoff = system.s_cutoff;
  sol.linear_residual = residual;
  sol.n_used = ch.n_used();
  for (int f = 0; f < kFamilyCount; ++f) {
    auto& vec = sol.coefficients[static_cast<std::size_t>(f)];
    vec.resize(static_cast<std::size_t>(ch.size()));
    for (const Channel& c : ch.channels()) {
      vec[static_cast<std::size_t>(ch.slot(c.n))] = x(system.column(static_cast<Family>(f), c.n));
    }
  }

  const ChannelCurrents cc = channel_currents(sol);
  sol.t_avg = cc.t_avg;
  sol.r_avg = cc.r_avg;
  sol.unitarity_residual = std::fabs(1.0 - cc.t_avg - cc.r_avg);
  return sol;
}

ScatteringSolution solve_window(const BeamParams& beam, const FieldParams& field, const Geometry& geom, int n,
                                int s_cutoff) {
  const DerivedScales scales = derive_scales(field);
  const ChannelSet channels = build_channels(beam, field, scales, -n, n);
  const int s = s_cutoff > 0 ? s_cutoff : default_s_cutoff(scales.alpha);
  return solve(assemble(channels, scales, geom, field.phi0(), s));
}

ScatteringSolution solve_adaptive(const BeamParams& beam, const FieldParams& field, const Geometry& geom, double tol,
                                  int n_start, int n_max) {
  if (!(tol > 0.0)) throw ValidationError("tolerance must be positive");
  if (n_start < 2) throw ValidationError("n_start must be >= 2");
  if (n_max < n_start) throw ValidationError("n_max must be >= n_start");

  const DerivedScales scales = derive_scales(field);
  const int s = default_s_cutoff(scales.alpha);
  double last_residual = 0.0;
  for (int n = n_start;; n = std::min(n + kWindowGrowth, n_max)) {
    const ChannelSet channels = build_channels(beam, field, scales, -n, n);
    ScatteringSolution sol = solve(assemble(channels, scales, geom, field.phi0(), s));
    last_residual = sol.unitarity_residual;
    if (sol.unitarity_residual <= tol && tail_current(channel_currents(sol), channels) < tol) return sol;
    if (n == n_max) break;
  }
  std::ostringstream msg;
  msg << "no convergence up to n_max=" << n_max << " (unitarity residual " << last_residual << ", tol " << tol
      << ")";
  throw NoConvergence(msg.str());
}

}  // namespace floquet
