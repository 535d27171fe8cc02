#pragma once

#include <Eigen/Dense>
#include <array>
#include <iosfwd>
#include <string_view>

#include "floquet/model.hpp"

namespace floquet {

/// Coefficient families, in column-block order.
///
/// Local coordinates follow the region layout: region 1 and 2 share the global
/// origin, region 3 starts at x = L, region 4 at x = L + d, region 5 at
/// x = 2L + d. The left-moving (or growing) families B, V and D are stored
/// referenced to the right edge of their own region, i.e. region 2 holds
/// b'_p exp(-i q_p (x - L)) instead of b_p exp(-i q_p x). This keeps every
/// matrix entry bounded when channels are deeply evanescent;
/// ScatteringSolution::conventional() converts back.
enum class Family : int { R = 0, A, B, U, V, C, D, T };
inline constexpr int kFamilyCount = 8;

std::string_view family_name(Family f);

/// Row blocks: continuity of the value and of d/dx at each boundary.
enum class Equation : int {
  ValueAt0 = 0,
  SlopeAt0,
  ValueAtL,
  SlopeAtL,
  ValueAtLd,
  SlopeAtLd,
  ValueAt2Ld,
  SlopeAt2Ld,
};

struct BoundarySystem {
  ChannelSet channels;
  Geometry geometry{1.0, 0.0};
  double phi0 = 0.0;
  int s_cutoff = 0;
  Eigen::MatrixXcd matrix;
  Eigen::VectorXcd rhs;

  int channel_count() const { return channels.size(); }
  int dimension() const { return kFamilyCount * channel_count(); }
  int column(Family f, int n) const { return static_cast<int>(f) * channel_count() + channels.slot(n); }
  int row(Equation e, int n) const { return static_cast<int>(e) * channel_count() + channels.slot(n); }
};

inline constexpr int kMinSCutoff = 12;
inline constexpr double kTermDropThreshold = 1e-18;
inline constexpr double kBesselOverflow = 1e12;

/// Smallest S with |J_S(alpha)| < 1e-16, never below 12.
int default_s_cutoff(double alpha);

/// Fourier-projected matching conditions for all channels in the window.
/// Derivative rows are divided by k0. Throws EvanescentOverflow when a Bessel
/// value exceeds 1e12 (too many deep evanescent channels).
BoundarySystem assemble(const ChannelSet& channels, const DerivedScales& scales, const Geometry& geom, double phi0,
                        int s_cutoff);

/// Text dump: a "# ..." header line, then one "row col re im" line per
/// nonzero matrix entry, then "# rhs" and one "row re im" line per nonzero
/// right-hand-side entry. Indices are zero-based.
void write_system(std::ostream& os, const BoundarySystem& system);

}  // namespace floquet
