#pragma once

#include <complex>
#include <vector>

namespace floquet {

using cplx = std::complex<double>;

namespace specfun {

inline constexpr int kMaxOrder = 500;
inline constexpr double kMaxArgument = 1e4;

/// Bessel function of the first kind J_n(z) for integer order and complex argument.
///
/// Small arguments (|z| <= 1) use the power series, everything else a normalized
/// downward (Miller) recurrence. Purely imaginary arguments go through I_n via
/// J_n(iy) = i^n I_n(y), so the result keeps its exact i^n phase structure, and
/// purely real arguments return results with an exactly zero imaginary part.
///
/// Throws DomainError for |n| > 500, |z| > 1e4, or when |Im z| is so large that
/// the result is not representable in double precision.
cplx bessel_j(int order, cplx z);

/// J_0(z) ... J_max_order(z) from a single recurrence sweep.
std::vector<cplx> bessel_j_orders(int max_order, cplx z);

/// Modified Bessel I_0(y) ... I_max_order(y) for real y.
std::vector<double> bessel_i_orders(int max_order, double y);

/// All J_m(z) for |m| <= max_order for one fixed argument. This is the
/// per-argument cache used during assembly: one recurrence sweep, then O(1) lookup.
class BesselTable {
 public:
  BesselTable() = default;
  BesselTable(cplx z, int max_order);

  cplx operator()(int order) const {
    const int m = order < 0 ? -order : order;
    const cplx v = values_[static_cast<std::size_t>(m)];
    return (order < 0 && (m & 1)) ? -v : v;
  }

  cplx argument() const { return z_; }
  int max_order() const { return static_cast<int>(values_.size()) - 1; }
  /// Largest |J_m| over the tabulated orders.
  double max_abs() const { return max_abs_; }

 private:
  cplx z_{};
  std::vector<cplx> values_{cplx(1.0)};
  double max_abs_ = 1.0;
};

}  // namespace specfun
}  // namespace floquet
