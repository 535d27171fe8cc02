#pragma once

#include <complex>
#include <string_view>
#include <vector>

namespace floquet {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

// All quantities are Hartree atomic units (e = m = hbar = 1).

/// Incoming monoenergetic beam.
class BeamParams {
 public:
  explicit BeamParams(double e0);
  double e0() const { return e0_; }
  /// Incident wavenumber sqrt(2 E0).
  double k0() const;

 private:
  double e0_;
};

/// Oscillating field shared by both interaction regions. The second region
/// oscillates as f0 cos(omega t + phi0); phi0 is stored reduced to [0, 2pi).
class FieldParams {
 public:
  FieldParams(double f0, double omega, double phi0 = 0.0);
  double f0() const { return f0_; }
  double omega() const { return omega_; }
  double phi0() const { return phi0_; }
  double period() const { return kTwoPi / omega_; }

 private:
  double f0_;
  double omega_;
  double phi0_;
};

/// Interaction-region length and the field-free gap between the two regions.
class Geometry {
 public:
  Geometry(double l, double d);
  double l() const { return l_; }
  double d() const { return d_; }

 private:
  double l_;
  double d_;
};

struct DerivedScales {
  double up = 0.0;     // ponderomotive potential f0^2 / (4 omega^2)
  double alpha = 0.0;  // -up / (2 omega)
  double gamma = 0.0;  // f0 / omega
};

/// One Floquet sideband E_n = E0 + n omega.
struct Channel {
  int n = 0;
  double energy = 0.0;
  cplx k;           // free-region wavenumber sqrt(2 E_n)
  cplx q;           // in-field wavenumber sqrt(2 (E_n - up))
  cplx beta_plus;   // beta(+q) = -q f0 / omega^2
  cplx beta_minus;  // beta(-q)
  bool propagating = false;         // E_n > 0
  bool propagating_in_field = false;  // E_n > up
};

/// Truncated Floquet basis n_min..n_max.
class ChannelSet {
 public:
  ChannelSet() = default;
  ChannelSet(int n_min, int n_max, const BeamParams& beam, const FieldParams& field, const DerivedScales& scales,
             std::vector<Channel> channels);

  int n_min() const { return n_min_; }
  int n_max() const { return n_max_; }
  int size() const { return static_cast<int>(channels_.size()); }
  double e0() const { return e0_; }
  double f0() const { return f0_; }
  double omega() const { return omega_; }
  double tau() const { return kTwoPi / omega_; }
  const DerivedScales& scales() const { return scales_; }
  /// Largest |n| in the window.
  int n_used() const { return n_max_ > -n_min_ ? n_max_ : -n_min_; }

  /// Position of channel n in [0, size()).
  int slot(int n) const { return n - n_min_; }
  const Channel& at(int n) const { return channels_.at(static_cast<std::size_t>(slot(n))); }
  const std::vector<Channel>& channels() const { return channels_; }

 private:
  int n_min_ = 0;
  int n_max_ = -1;
  double e0_ = 0.0;
  double f0_ = 0.0;
  double omega_ = 1.0;
  DerivedScales scales_;
  std::vector<Channel> channels_;
};

inline constexpr double kThresholdGuard = 1e-12;
inline constexpr double kSuggestedEnergyShift = 1e-9;

/// Reduce an angle to [0, 2pi).
double reduce_phase(double phi);

/// sqrt(2 e) on the physical branch: positive real above threshold,
/// positive imaginary below.
cplx branch_wavenumber(double e);

DerivedScales derive_scales(const FieldParams& field);

/// Builds channels n_neg..n_pos. Throws ThresholdDegeneracy when a wavenumber
/// would be (numerically) zero; callers perturb E0 in that case.
ChannelSet build_channels(const BeamParams& beam, const FieldParams& field, const DerivedScales& scales,
                          int n_neg, int n_pos);

/// de Broglie wavelength 2 pi / k0.
double de_broglie_wavelength(double e0);

enum class UnitKind { WavelengthNmToOmegaAu, EvToAu, AuToEv };

namespace units {
inline constexpr double kHartreeEv = 27.211386245988;
inline constexpr double kBohrNm = 0.0529177210903;
inline constexpr double kSpeedOfLightAu = 137.035999084;
}  // namespace units

/// Throws ValidationError for an unknown name. Accepted names are
/// wavelength_nm_to_omega_au, ev_to_au and au_to_ev.
UnitKind parse_unit_kind(std::string_view name);

double convert_units(double value, UnitKind kind);

}  // namespace floquet
