#pragma once

#include <array>
#include <vector>

#include "floquet/assembler.hpp"
#include "floquet/model.hpp"

namespace floquet {

/// Solved scattering state. Coefficient vectors are indexed by channel slot
/// (channels.slot(n)); families B, V and D are edge-referenced as documented
/// on Family.
struct ScatteringSolution {
  BeamParams beam{1.0};
  FieldParams field{0.0, 1.0};
  Geometry geometry{1.0, 0.0};
  DerivedScales scales;
  ChannelSet channels;
  int s_cutoff = 0;
  std::array<std::vector<cplx>, kFamilyCount> coefficients;

  double linear_residual = 0.0;      // ||Ax - b||_inf / (||A||_inf ||x||_inf + ||b||_inf)
  double t_avg = 0.0;
  double r_avg = 0.0;
  double unitarity_residual = 0.0;   // |1 - T - R|
  int n_used = 0;

  cplx coefficient(Family f, int n) const {
    return coefficients[static_cast<std::size_t>(f)][static_cast<std::size_t>(channels.slot(n))];
  }
  /// Coefficient in the global-origin convention of each region (b_p, v_n, d_p
  /// multiply exp(-i q x) / exp(-i k x) with x measured from the region's left
  /// edge). Deep evanescent values may underflow to zero.
  cplx conventional(Family f, int n) const;
};

inline constexpr double kDefaultTolerance = 1e-6;
inline constexpr int kDefaultNStart = 5;
inline constexpr int kDefaultNMax = 60;
inline constexpr int kWindowGrowth = 4;
inline constexpr double kLinearResidualBound = 1e-10;

/// Dense LU with partial pivoting. Throws SingularSystem on a vanishing pivot
/// or when the solution misses the 1e-10 relative residual bound.
ScatteringSolution solve(const BoundarySystem& system);

/// Convenience: build channels [-n, n], assemble with the default S cutoff and solve.
ScatteringSolution solve_window(const BeamParams& beam, const FieldParams& field, const Geometry& geom, int n,
                                int s_cutoff = 0);

/// Grows the symmetric window n_start, n_start + 4, ... (capped at n_max) until
/// |1 - <T> - <R>| <= tol and the two outermost channels on each side carry
/// less than tol of current. Throws NoConvergence past n_max; ThresholdDegeneracy
/// propagates unchanged.
ScatteringSolution solve_adaptive(const BeamParams& beam, const FieldParams& field, const Geometry& geom,
                                  double tol = kDefaultTolerance, int n_start = kDefaultNStart,
                                  int n_max = kDefaultNMax);

}  // namespace floquet
