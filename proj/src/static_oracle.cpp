#include "floquet/static_oracle.hpp"

#include <lapacke.h>
#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "floquet/errors.hpp"

namespace floquet {
namespace {

using Mat2 = std::array<double, 4>;  // row-major 2x2

Mat2 multiply(const Mat2& a, const Mat2& b) {
  return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3], a[2] * b[0] + a[3] * b[2],
          a[2] * b[1] + a[3] * b[3]};
}

// Maps (psi, psi') across a flat layer of width w with local kinetic energy eps.
//   [cos kw, sin(kw)/k; -k^2 sin(kw)/k, cos kw],  k^2 = 2 eps
Mat2 layer(double eps, double w) {
  const double k2 = 2.0 * eps;
  const double x2 = k2 * w * w;
  double c = 0.0;
  double s = 0.0;
  if (std::fabs(x2) < 1e-8) {
    c = 1.0 - x2 / 2.0 + x2 * x2 / 24.0;
    s = w * (1.0 - x2 / 6.0 + x2 * x2 / 120.0);
  } else if (eps > 0.0) {
    const double k = std::sqrt(k2);
    c = std::cos(k * w);
    s = std::sin(k * w) / k;
  } else {
    const double kappa = std::sqrt(-k2);
    c = std::cosh(kappa * w);
    s = std::sinh(kappa * w) / kappa;
  }
  return {c, s, -k2 * s, c};
}

double golden_max(const StaticBarrierSpec& spec, double lo, double hi, double tol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = static_transmission(c, spec);
  double fd = static_transmission(d, spec);
  while (b - a > tol) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = static_transmission(c, spec);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = static_transmission(d, spec);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

void StaticBarrierSpec::validate() const {
  if (!(up >= 0.0)) throw ValidationError("barrier height must be >= 0");
  if (!(l > 0.0)) throw ValidationError("barrier width must be positive");
  if (!(d >= 0.0)) throw ValidationError("barrier gap must be >= 0");
}

StaticScattering static_scattering(double e, const StaticBarrierSpec& spec) {
  spec.validate();
  if (!(e > 0.0)) throw ValidationError("static_transmission needs e > 0");
  const Mat2 barrier = layer(e - spec.up, spec.l);
  const Mat2 m = multiply(barrier, multiply(layer(e, spec.d), barrier));
  const double k = std::sqrt(2.0 * e);
  const cplx ik(0.0, k);
  const cplx p = m[2] - ik * m[0];
  const cplx q = ik * m[3] + k * k * m[1];
  StaticScattering out;
  out.r = -(p + q) / (p - q);
  out.t = m[0] * (1.0 + out.r) + ik * m[1] * (1.0 - out.r);
  return out;
}

double static_transmission(double e, const StaticBarrierSpec& spec) { return static_scattering(e, spec).transmission(); }

std::vector<Resonance> find_resonances(const StaticBarrierSpec& spec, double e_min, double e_max, int coarse_steps,
                                       double min_prominence) {
  if (!(e_min > 0.0) || !(e_max > e_min)) throw ValidationError("find_resonances needs 0 < e_min < e_max");
  if (coarse_steps < 3) throw ValidationError("find_resonances needs at least 3 coarse steps");
  if (!(min_prominence >= 0.0)) throw ValidationError("min_prominence must be >= 0");
  const std::size_t m = static_cast<std::size_t>(coarse_steps);
  std::vector<double> e(m);
  std::vector<double> t(m);
  for (std::size_t i = 0; i < m; ++i) {
    e[i] = e_min + (e_max - e_min) * static_cast<double>(i) / (coarse_steps - 1);
    t[i] = static_transmission(e[i], spec);
  }
  std::vector<std::size_t> peaks;
  for (std::size_t i = 1; i + 1 < m; ++i) {
    if (!(t[i] > t[i - 1] && t[i] >= t[i + 1])) continue;
    // T == 1 up to rounding has no resonances.
    if (t[i] - std::min(t[i - 1], t[i + 1]) < 1e-12) continue;
    peaks.push_back(i);
  }
  // Valley floors between neighbouring maxima (or the grid ends).
  std::vector<double> floor(peaks.size() + 1);
  for (std::size_t p = 0; p <= peaks.size(); ++p) {
    const std::size_t lo = p == 0 ? 0 : peaks[p - 1];
    const std::size_t hi = p == peaks.size() ? m - 1 : peaks[p];
    floor[p] = *std::min_element(t.begin() + static_cast<std::ptrdiff_t>(lo), t.begin() + static_cast<std::ptrdiff_t>(hi) + 1);
  }
  std::vector<Resonance> out;
  for (std::size_t p = 0; p < peaks.size(); ++p) {
    const std::size_t i = peaks[p];
    const double peak = golden_max(spec, e[i - 1], e[i + 1], 1e-8);
    const double height = static_transmission(peak, spec);
    if (height - std::max(floor[p], floor[p + 1]) < min_prominence) continue;
    if (!out.empty() && std::fabs(out.back().energy - peak) < 1e-7) continue;
    out.push_back({peak, height});
  }
  return out;
}

std::vector<double> EigenResult::localized_energies() const {
  std::vector<double> out;
  for (std::size_t i = 0; i < energies.size(); ++i) {
    if (localized[i]) out.push_back(energies[i]);
  }
  return out;
}

EigenResult eigenstates_periodic(const StaticBarrierSpec& spec, double domain_length, int grid_points,
                                 double localization_threshold, double max_energy) {
  spec.validate();
  if (!(domain_length > spec.total_width())) throw ValidationError("domain must be longer than 2l + d");
  if (grid_points < 200) throw ValidationError("eigenstates_periodic needs at least 200 grid points");

  const int n = grid_points;
  const double h = domain_length / n;
  const double left = 0.5 * (domain_length - spec.total_width());
  EigenResult res;
  res.well_begin = left + spec.l;
  res.well_end = res.well_begin + spec.d;
  res.grid.resize(static_cast<std::size_t>(n));
  res.potential.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double x = i * h;
    res.grid[static_cast<std::size_t>(i)] = x;
    const bool in_barrier = (x >= left && x < res.well_begin) ||
                            (x >= res.well_end && x < res.well_end + spec.l);
    res.potential[static_cast<std::size_t>(i)] = in_barrier ? spec.up : 0.0;
  }

  // Interleave the ring sites (0, n-1, 1, n-2, ...) so that the cyclic
  // hopping becomes a band of half-width 2, then let LAPACK's banded solver
  // return only the eigenpairs up to max_energy.
  std::vector<int> site(static_cast<std::size_t>(n));
  std::vector<int> slot(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    site[static_cast<std::size_t>(j)] = (j % 2 == 0) ? j / 2 : n - 1 - (j - 1) / 2;
    slot[static_cast<std::size_t>(site[static_cast<std::size_t>(j)])] = j;
  }
  constexpr int kd = 2;
  constexpr int ldab = kd + 1;
  const double hop = -0.5 / (h * h);
  std::vector<double> band(static_cast<std::size_t>(ldab) * n, 0.0);
  auto put = [&](int a, int b, double v) {
    const int i = std::min(a, b);
    const int j = std::max(a, b);
    band[static_cast<std::size_t>(kd + i - j + j * ldab)] = v;
  };
  for (int x = 0; x < n; ++x) {
    const int j = slot[static_cast<std::size_t>(x)];
    put(j, j, -2.0 * hop + res.potential[static_cast<std::size_t>(x)]);
    put(j, slot[static_cast<std::size_t>((x + 1) % n)], hop);
  }

  const double v_max = *std::max_element(res.potential.begin(), res.potential.end());
  const char range = max_energy > 0.0 ? 'V' : 'A';
  const double lower = -1.0;
  const double upper = max_energy > 0.0 ? max_energy : v_max - 4.0 * hop + 1.0;
  std::vector<double> q(static_cast<std::size_t>(n) * n);
  std::vector<double> w(static_cast<std::size_t>(n));
  std::vector<double> z(static_cast<std::size_t>(n) * n);
  std::vector<lapack_int> ifail(static_cast<std::size_t>(n));
  lapack_int found = 0;
  const lapack_int info =
      LAPACKE_dsbevx(LAPACK_COL_MAJOR, 'V', range, 'U', n, kd, band.data(), ldab, q.data(), n, lower, upper, 0, 0,
                     2.0 * LAPACKE_dlamch('S'), &found, w.data(), z.data(), n, ifail.data());
  if (info != 0) throw Error("banded eigensolver failed (info " + std::to_string(info) + ")");

  for (int k = 0; k < found; ++k) {
    const double energy = w[static_cast<std::size_t>(k)];
    std::vector<double> psi(static_cast<std::size_t>(n));
    double norm = 0.0;
    for (int i = 0; i < n; ++i) {
      psi[static_cast<std::size_t>(i)] =
          z[static_cast<std::size_t>(slot[static_cast<std::size_t>(i)]) + static_cast<std::size_t>(k) * n];
      norm += psi[static_cast<std::size_t>(i)] * psi[static_cast<std::size_t>(i)] * h;
    }
    const double scale = 1.0 / std::sqrt(norm);
    double well = 0.0;
    for (int i = 0; i < n; ++i) {
      double& v = psi[static_cast<std::size_t>(i)];
      v *= scale;
      const double x = res.grid[static_cast<std::size_t>(i)];
      if (x >= res.well_begin && x < res.well_end) well += v * v * h;
    }
    res.energies.push_back(energy);
    res.states.push_back(std::move(psi));
    res.well_weight.push_back(well);
    res.localized.push_back(well >= localization_threshold);
  }
  return res;
}

}  // namespace floquet
