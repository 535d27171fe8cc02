#include "floquet/model.hpp"

#include <cmath>
#include <sstream>
#include <string>

#include "floquet/errors.hpp"

namespace floquet {

BeamParams::BeamParams(double e0) : e0_(e0) {
  if (!(e0 > 0.0) || !std::isfinite(e0)) throw ValidationError("beam energy e0 must be positive");
}

double BeamParams::k0() const { return std::sqrt(2.0 * e0_); }

FieldParams::FieldParams(double f0, double omega, double phi0) : f0_(f0), omega_(omega), phi0_(reduce_phase(phi0)) {
  if (!(f0 >= 0.0) || !std::isfinite(f0)) throw ValidationError("field amplitude f0 must be >= 0");
  if (!(omega > 0.0) || !std::isfinite(omega)) throw ValidationError("angular frequency omega must be positive");
  if (!std::isfinite(phi0)) throw ValidationError("phase phi0 must be finite");
}

Geometry::Geometry(double l, double d) : l_(l), d_(d) {
  if (!(l > 0.0) || !std::isfinite(l)) throw ValidationError("interaction length L must be positive");
  if (!(d >= 0.0) || !std::isfinite(d)) throw ValidationError("separation d must be >= 0");
}

ChannelSet::ChannelSet(int n_min, int n_max, const BeamParams& beam, const FieldParams& field,
                       const DerivedScales& scales, std::vector<Channel> channels)
    : n_min_(n_min),
      n_max_(n_max),
      e0_(beam.e0()),
      f0_(field.f0()),
      omega_(field.omega()),
      scales_(scales),
      channels_(std::move(channels)) {}

double reduce_phase(double phi) {
  double r = std::fmod(phi, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;
  return r;
}

cplx branch_wavenumber(double e) {
  if (e > 0.0) return {std::sqrt(2.0 * e), 0.0};
  return {0.0, std::sqrt(-2.0 * e)};
}

DerivedScales derive_scales(const FieldParams& field) {
  const double w = field.omega();
  DerivedScales s;
  s.up = field.f0() * field.f0() / (4.0 * w * w);
  s.alpha = -s.up / (2.0 * w);
  s.gamma = field.f0() / w;
  return s;
}

ChannelSet build_channels(const BeamParams& beam, const FieldParams& field, const DerivedScales& scales,
                          int n_neg, int n_pos) {
  if (n_neg > 0 || n_pos < 0) throw ValidationError("channel window must contain n = 0");
  const double w = field.omega();
  const double coupling = field.f0() / (w * w);
  std::vector<Channel> out;
  out.reserve(static_cast<std::size_t>(n_pos - n_neg + 1));
  for (int n = n_neg; n <= n_pos; ++n) {
    Channel c;
    c.n = n;
    c.energy = beam.e0() + n * w;
    const double inside = c.energy - scales.up;
    if (std::fabs(c.energy) < kThresholdGuard || std::fabs(inside) < kThresholdGuard) {
      std::ostringstream msg;
      msg << "channel n=" << n << " sits on a threshold (E_n=" << c.energy << ", E_n-Up=" << inside
          << "); shift e0 by " << kSuggestedEnergyShift;
      throw ThresholdDegeneracy(msg.str(), kSuggestedEnergyShift);
    }
    c.k = branch_wavenumber(c.energy);
    c.q = branch_wavenumber(inside);
    c.beta_plus = -c.q * coupling;
    c.beta_minus = c.q * coupling;
    c.propagating = c.energy > 0.0;
    c.propagating_in_field = inside > 0.0;
    out.push_back(c);
  }
  return ChannelSet(n_neg, n_pos, beam, field, scales, std::move(out));
}

double de_broglie_wavelength(double e0) { return kTwoPi / std::sqrt(2.0 * e0); }

UnitKind parse_unit_kind(std::string_view name) {
  if (name == "wavelength_nm_to_omega_au") return UnitKind::WavelengthNmToOmegaAu;
  if (name == "ev_to_au") return UnitKind::EvToAu;
  if (name == "au_to_ev") return UnitKind::AuToEv;
  throw ValidationError("unknown conversion kind '" + std::string(name) + "'");
}

double convert_units(double value, UnitKind kind) {
  if (!(value > 0.0) || !std::isfinite(value)) throw ValidationError("conversion input must be positive");
  switch (kind) {
    case UnitKind::WavelengthNmToOmegaAu:
      return kTwoPi * units::kSpeedOfLightAu / (value / units::kBohrNm);
    case UnitKind::EvToAu:
      return value / units::kHartreeEv;
    case UnitKind::AuToEv:
      return value * units::kHartreeEv;
  }
  throw ValidationError("unknown conversion kind");
}

}  // namespace floquet
