#pragma once

#include <vector>

#include "floquet/solver.hpp"

namespace floquet {

/// Cycle-averaged current carried by each propagating channel, normalized to
/// the incident current k0. Evanescent channels are left out entirely.
struct ChannelCurrents {
  int n0 = 0;                     // lowest propagating index
  std::vector<int> index;         // n0 .. n_max
  std::vector<double> reflected;  // (k_n / k0) |r_n|^2
  std::vector<double> transmitted;
  double t_avg = 0.0;
  double r_avg = 0.0;

  double jt(int n) const;
  double jr(int n) const;
};

ChannelCurrents channel_currents(const ScatteringSolution& sol);

enum class Region : int { Incident = 1, FirstField, Gap, SecondField, Transmitted };

/// Region containing global coordinate x; boundaries belong to the region on
/// their right.
Region region_of(const Geometry& geom, double x);

/// Left edge of a region in global coordinates (region 1 uses 0).
double region_origin(const Geometry& geom, Region region);

struct PointValue {
  cplx psi;
  cplx dpsi;  // d/dx, analytic
};

/// Evaluates the closed-form expansion of one region at a local coordinate.
/// The field regions use the Gordon-Volkov states themselves rather than their
/// truncated Fourier series, so mismatches at the boundaries measure the
/// truncation of the matching problem.
PointValue evaluate_region(const ScatteringSolution& sol, Region region, double local_x, double t);

cplx wavefunction(const ScatteringSolution& sol, double x, double t);
/// Im(psi* dpsi/dx).
double current_density(const ScatteringSolution& sol, double x, double t);
double density(const ScatteringSolution& sol, double x, double t);

/// Largest relative mismatch of psi and dpsi/dx over the four boundaries and
/// `samples` equally spaced times in one period. Mismatches are measured
/// against the largest |psi| (resp. |dpsi/dx|) seen over all boundary samples.
double boundary_residual(const ScatteringSolution& sol, int samples = 64);

/// Sign of the classical force -F(t) on the particle, per region: region 2 uses
/// the first field, region 4 the phase-shifted one, field-free regions give 0.
int force_sign(const ScatteringSolution& sol, double x, double t);

struct FieldMap {
  std::vector<double> x;
  std::vector<double> t;
  // Row-major [time][space].
  std::vector<double> j;
  std::vector<double> rho;
  std::vector<int> force_sign;

  std::size_t at(std::size_t it, std::size_t ix) const { return it * x.size() + ix; }
};

/// j and rho on an inclusive grid: nx points over [x_min, x_max] and nt points
/// over [0, periods * tau]. Rows are computed in parallel on `threads` workers
/// (0 = hardware concurrency).
FieldMap field_map(const ScatteringSolution& sol, double x_min, double x_max, int nx, int periods, int nt,
                   int threads = 1);

}  // namespace floquet
