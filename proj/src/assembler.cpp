#include "floquet/assembler.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <vector>

#include "floquet/errors.hpp"
#include "floquet/specfun.hpp"

namespace floquet {
namespace {

const cplx kI(0.0, 1.0);

cplx ipow(int m) {
  switch (((m % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

// Fourier coefficients (index n) of the two Volkov modes of channel p, for the
// value and for d/dx, with the common exp(-i gamma x sin) factor removed:
//   value_plus(n,p)  = sum_s J_s(alpha) i^m J_m(beta_p)
//   value_minus(n,p) = sum_s J_s(alpha) i^m J_m(-beta_p)
//   slope_plus(n,p)  = sum_s J_s(alpha) i^(m+1) J_m(beta_p)  ( q_p - m omega / q_p)
//   slope_minus(n,p) = sum_s J_s(alpha) i^(m+1) J_m(-beta_p) (-q_p + m omega / q_p)
// with m = 2s - n + p. The slope form comes from the three-term recurrence
// applied to -i gamma sin(omega t) times the series, using gamma / beta(q) = -omega / q.
struct ModeBlocks {
  Eigen::MatrixXcd value_plus, value_minus, slope_plus, slope_minus;
};

ModeBlocks mode_blocks(const ChannelSet& channels, double alpha, int s_cutoff) {
  const int count = channels.size();
  const int span = channels.n_max() - channels.n_min();
  const int max_order = 2 * s_cutoff + span;
  const double omega = channels.omega();

  const specfun::BesselTable alpha_table(cplx(alpha, 0.0), s_cutoff);

  ModeBlocks out;
  out.value_plus = Eigen::MatrixXcd::Zero(count, count);
  out.value_minus = Eigen::MatrixXcd::Zero(count, count);
  out.slope_plus = Eigen::MatrixXcd::Zero(count, count);
  out.slope_minus = Eigen::MatrixXcd::Zero(count, count);

  for (const Channel& cp : channels.channels()) {
    const int p = cp.n;
    const int col = channels.slot(p);
    const specfun::BesselTable beta(cp.beta_plus, max_order);
    if (beta.max_abs() > kBesselOverflow) {
      std::ostringstream msg;
      msg << "Bessel magnitude " << beta.max_abs() << " for channel " << p
          << " exceeds 1e12; reduce the channel count";
      throw EvanescentOverflow(msg.str());
    }
    for (const Channel& cn : channels.channels()) {
      const int n = cn.n;
      const int row = channels.slot(n);
      cplx vp(0.0), vm(0.0), sp(0.0), sm(0.0);
      for (int s = -s_cutoff; s <= s_cutoff; ++s) {
        const double js = alpha_table(s).real();
        const int m = 2 * s - n + p;
        const cplx jm = beta(m);
        if (std::abs(js) * std::abs(jm) < kTermDropThreshold) continue;
        const cplx w = js * ipow(m) * jm;
        const cplx w_minus = (m & 1) ? -w : w;
        const cplx factor = cp.q - static_cast<double>(m) * omega / cp.q;
        vp += w;
        vm += w_minus;
        sp += kI * w * factor;
        sm -= kI * w_minus * factor;
      }
      out.value_plus(row, col) = vp;
      out.value_minus(row, col) = vm;
      out.slope_plus(row, col) = sp;
      out.slope_minus(row, col) = sm;
    }
  }
  return out;
}

}  // namespace

std::string_view family_name(Family f) {
  static constexpr std::array<std::string_view, kFamilyCount> names{"r", "a", "b", "u", "v", "c", "d", "t"};
  return names[static_cast<std::size_t>(f)];
}

int default_s_cutoff(double alpha) {
  if (alpha == 0.0) return kMinSCutoff;
  const std::vector<cplx> j = specfun::bessel_j_orders(200, cplx(std::fabs(alpha), 0.0));
  for (int s = 0; s <= 200; ++s) {
    if (std::abs(j[static_cast<std::size_t>(s)]) < 1e-16) return std::max(s, kMinSCutoff);
  }
  return 200;
}

BoundarySystem assemble(const ChannelSet& channels, const DerivedScales& scales, const Geometry& geom, double phi0,
                        int s_cutoff) {
  if (s_cutoff < 1) throw ValidationError("s_cutoff must be >= 1");
  if (channels.size() == 0) throw ValidationError("empty channel set");

  BoundarySystem sys;
  sys.channels = channels;
  sys.geometry = geom;
  sys.phi0 = reduce_phase(phi0);
  sys.s_cutoff = s_cutoff;

  const int dim = sys.dimension();
  sys.matrix = Eigen::MatrixXcd::Zero(dim, dim);
  sys.rhs = Eigen::VectorXcd::Zero(dim);

  const ModeBlocks blk = mode_blocks(channels, scales.alpha, s_cutoff);
  const double l = geom.l();
  const double d = geom.d();
  const double k0 = std::sqrt(2.0 * channels.e0());
  const double inv_k0 = 1.0 / k0;

  auto& A = sys.matrix;
  for (const Channel& cn : channels.channels()) {
    const int n = cn.n;
    const int in = channels.slot(n);
    const cplx ikn = kI * cn.k;
    const cplx gap_phase = std::exp(kI * cn.k * d);

    // Free-region sides.
    A(sys.row(Equation::ValueAt0, n), sys.column(Family::R, n)) = 1.0;
    A(sys.row(Equation::SlopeAt0, n), sys.column(Family::R, n)) = -ikn * inv_k0;

    A(sys.row(Equation::ValueAtL, n), sys.column(Family::U, n)) = -1.0;
    A(sys.row(Equation::ValueAtL, n), sys.column(Family::V, n)) = -gap_phase;
    A(sys.row(Equation::SlopeAtL, n), sys.column(Family::U, n)) = -ikn * inv_k0;
    A(sys.row(Equation::SlopeAtL, n), sys.column(Family::V, n)) = ikn * gap_phase * inv_k0;

    A(sys.row(Equation::ValueAtLd, n), sys.column(Family::U, n)) = gap_phase;
    A(sys.row(Equation::ValueAtLd, n), sys.column(Family::V, n)) = 1.0;
    A(sys.row(Equation::SlopeAtLd, n), sys.column(Family::U, n)) = ikn * gap_phase * inv_k0;
    A(sys.row(Equation::SlopeAtLd, n), sys.column(Family::V, n)) = -ikn * inv_k0;

    A(sys.row(Equation::ValueAt2Ld, n), sys.column(Family::T, n)) = -1.0;
    A(sys.row(Equation::SlopeAt2Ld, n), sys.column(Family::T, n)) = -ikn * inv_k0;

    // Field-region sides.
    for (const Channel& cp : channels.channels()) {
      const int p = cp.n;
      const int ip = channels.slot(p);
      const cplx span_phase = std::exp(kI * cp.q * l);
      const cplx shift = std::exp(-kI * static_cast<double>(n - p) * sys.phi0);
      const cplx vp = blk.value_plus(in, ip);
      const cplx vm = blk.value_minus(in, ip);
      const cplx sp = blk.slope_plus(in, ip) * inv_k0;
      const cplx sm = blk.slope_minus(in, ip) * inv_k0;

      A(sys.row(Equation::ValueAt0, n), sys.column(Family::A, p)) = -vp;
      A(sys.row(Equation::ValueAt0, n), sys.column(Family::B, p)) = -vm * span_phase;
      A(sys.row(Equation::SlopeAt0, n), sys.column(Family::A, p)) = -sp;
      A(sys.row(Equation::SlopeAt0, n), sys.column(Family::B, p)) = -sm * span_phase;

      A(sys.row(Equation::ValueAtL, n), sys.column(Family::A, p)) = vp * span_phase;
      A(sys.row(Equation::ValueAtL, n), sys.column(Family::B, p)) = vm;
      A(sys.row(Equation::SlopeAtL, n), sys.column(Family::A, p)) = sp * span_phase;
      A(sys.row(Equation::SlopeAtL, n), sys.column(Family::B, p)) = sm;

      A(sys.row(Equation::ValueAtLd, n), sys.column(Family::C, p)) = -shift * vp;
      A(sys.row(Equation::ValueAtLd, n), sys.column(Family::D, p)) = -shift * vm * span_phase;
      A(sys.row(Equation::SlopeAtLd, n), sys.column(Family::C, p)) = -shift * sp;
      A(sys.row(Equation::SlopeAtLd, n), sys.column(Family::D, p)) = -shift * sm * span_phase;

      A(sys.row(Equation::ValueAt2Ld, n), sys.column(Family::C, p)) = shift * vp * span_phase;
      A(sys.row(Equation::ValueAt2Ld, n), sys.column(Family::D, p)) = shift * vm;
      A(sys.row(Equation::SlopeAt2Ld, n), sys.column(Family::C, p)) = shift * sp * span_phase;
      A(sys.row(Equation::SlopeAt2Ld, n), sys.column(Family::D, p)) = shift * sm;
    }
  }

  // Incident wave exp(i k0 x): value 1, slope i k0 (scaled by 1/k0).
  sys.rhs(sys.row(Equation::ValueAt0, 0)) = -1.0;
  sys.rhs(sys.row(Equation::SlopeAt0, 0)) = -kI;
  return sys;
}

void write_system(std::ostream& os, const BoundarySystem& system) {
  os << "# floquet boundary system dimension=" << system.dimension() << " channels=" << system.channels.n_min()
     << ".." << system.channels.n_max() << " s_cutoff=" << system.s_cutoff << '\n';
  os << std::setprecision(17);
  for (int r = 0; r < system.matrix.rows(); ++r) {
    for (int c = 0; c < system.matrix.cols(); ++c) {
      const cplx v = system.matrix(r, c);
      if (v != cplx(0.0)) os << r << ' ' << c << ' ' << v.real() << ' ' << v.imag() << '\n';
    }
  }
  os << "# rhs\n";
  for (int r = 0; r < system.rhs.size(); ++r) {
    const cplx v = system.rhs(r);
    if (v != cplx(0.0)) os << r << ' ' << v.real() << ' ' << v.imag() << '\n';
  }
}

}  // namespace floquet
