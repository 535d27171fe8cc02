#pragma once

#include <vector>

#include "floquet/model.hpp"

namespace floquet {

/// Symmetric rectangular double barrier: two barriers of height `up` and
/// width `l` separated by a field-free well of width `d`.
struct StaticBarrierSpec {
  double up = 0.0;
  double l = 1.0;
  double d = 0.0;

  void validate() const;
  double total_width() const { return 2.0 * l + d; }
};

struct StaticScattering {
  cplx r;
  cplx t;
  double transmission() const { return std::norm(t); }
  double reflection() const { return std::norm(r); }
};

/// Amplitudes from (psi, psi') transfer matrices across the three layers.
/// The layer matrices are entire in the local wavenumber squared, so e == up
/// needs no special treatment.
StaticScattering static_scattering(double e, const StaticBarrierSpec& spec);

/// |t|^2 for the double barrier.
double static_transmission(double e, const StaticBarrierSpec& spec);

struct Resonance {
  double energy;
  double t_peak;
};

inline constexpr double kDefaultMinProminence = 0.5;

/// Strict interior local maxima of T on a uniform grid of coarse_steps points,
/// refined by golden-section search to 1e-8 in energy. A maximum is kept when
/// its refined height exceeds by at least min_prominence the higher of the two
/// valley floors separating it from the neighbouring maxima (or the interval
/// ends); 0 keeps every maximum.
std::vector<Resonance> find_resonances(const StaticBarrierSpec& spec, double e_min, double e_max,
                                       int coarse_steps = 4000, double min_prominence = kDefaultMinProminence);

inline constexpr double kDefaultLocalizationThreshold = 0.6;

struct EigenResult {
  std::vector<double> grid;
  std::vector<double> potential;
  std::vector<double> energies;             // ascending
  std::vector<std::vector<double>> states;  // sum psi^2 dx = 1
  std::vector<double> well_weight;          // probability inside the well
  std::vector<bool> localized;
  double well_begin = 0.0;
  double well_end = 0.0;

  std::vector<double> localized_energies() const;
};

/// Finite-difference Hamiltonian -1/2 d^2/dx^2 + V on a ring of
/// `grid_points` sites covering `domain_length`; the barriers sit centered in
/// the domain and the last site couples back to the first. Only states with
/// energy below `max_energy` are kept (all of them when max_energy <= 0).
EigenResult eigenstates_periodic(const StaticBarrierSpec& spec, double domain_length, int grid_points,
                                 double localization_threshold = kDefaultLocalizationThreshold,
                                 double max_energy = 0.0);

}  // namespace floquet
