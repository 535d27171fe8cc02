#include "floquet/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "floquet/errors.hpp"

namespace floquet::specfun {
namespace {

constexpr double kSeriesRadius = 1.0;
constexpr double kRescaleAbove = 1e200;
constexpr double kRescaleBy = 1e-200;
// exp(709) is the largest representable exponential.
constexpr double kMaxImaginaryPart = 700.0;

void check_domain(int max_order, cplx z) {
  if (max_order > kMaxOrder || max_order < -kMaxOrder) {
    throw DomainError("bessel order " + std::to_string(max_order) + " outside [-500, 500]");
  }
  if (!(std::abs(z) <= kMaxArgument)) {
    throw DomainError("bessel argument |z| = " + std::to_string(std::abs(z)) + " exceeds 1e4");
  }
  if (std::abs(z.imag()) > kMaxImaginaryPart) {
    throw DomainError("bessel argument imaginary part too large for double precision");
  }
}

// First order at which the downward recurrence starts. Far enough above both
// the requested order and |z| that the seed error is below double precision.
int miller_start(int max_order, double abs_z) {
  const double m0 = std::max<double>(max_order, std::ceil(abs_z));
  int start = static_cast<int>(m0 + 30.0 + 6.0 * std::sqrt(m0));
  if (start & 1) ++start;
  return start;
}

// Power series, valid for any complex z; used only for |z| <= 1.
//   J_n(z) = sum_k (-1)^k (z/2)^(2k+n) / (k! (k+n)!)
template <class T>
T series_j(int n, T z, bool modified) {
  T lead = T(1.0);
  const T half = z / 2.0;
  for (int j = 1; j <= n; ++j) lead *= half / static_cast<double>(j);
  const T step = (modified ? 1.0 : -1.0) * half * half;
  T term = lead;
  T sum = lead;
  for (int k = 1; k < 200; ++k) {
    term *= step / (static_cast<double>(k) * static_cast<double>(k + n));
    sum += term;
    if (std::abs(term) <= 1e-18 * std::abs(sum)) break;
  }
  return sum;
}

// Downward recurrence f_{k-1} = (2k/z) f_k - sign * f_{k+1}, seeded with a tiny
// value at `start`. sign = +1 gives J, sign = -1 gives I. The unnormalized
// sequence f_0..f_max_order is returned together with the normalization sum
// built with weights(k) (k >= 1 terms are doubled by the caller's weights).
template <class T, class Weight>
std::vector<T> miller(int max_order, T z, double sign, Weight weight, T& norm) {
  const int start = miller_start(max_order, std::abs(z));
  std::vector<T> out(static_cast<std::size_t>(max_order) + 1, T(0.0));
  T above = T(0.0);
  T cur = T(1e-30);
  norm = T(0.0);
  for (int k = start; k >= 1; --k) {
    if (k <= max_order) out[static_cast<std::size_t>(k)] = cur;
    norm += 2.0 * weight(k) * cur;
    const T below = (2.0 * k) / z * cur - sign * above;
    above = cur;
    cur = below;
    if (std::abs(cur) > kRescaleAbove) {
      cur *= kRescaleBy;
      above *= kRescaleBy;
      norm *= kRescaleBy;
      for (int j = k; j <= max_order; ++j) out[static_cast<std::size_t>(j)] *= kRescaleBy;
    }
  }
  out[0] = cur;
  norm += cur;
  return out;
}

std::vector<double> j_real_orders(int max_order, double x) {
  const bool negate_odd = x < 0.0;
  const double ax = std::fabs(x);
  std::vector<double> out(static_cast<std::size_t>(max_order) + 1, 0.0);
  if (ax == 0.0) {
    out[0] = 1.0;
    return out;
  }
  if (ax <= kSeriesRadius) {
    for (int n = 0; n <= max_order; ++n) out[static_cast<std::size_t>(n)] = series_j(n, ax, false);
  } else {
    double norm = 0.0;
    // J_0 + 2 sum_k J_2k = 1
    auto even = [](int k) { return (k & 1) ? 0.0 : 1.0; };
    out = miller(max_order, ax, 1.0, even, norm);
    for (double& v : out) v /= norm;
  }
  if (negate_odd) {
    for (int n = 1; n <= max_order; n += 2) out[static_cast<std::size_t>(n)] = -out[static_cast<std::size_t>(n)];
  }
  return out;
}

std::vector<cplx> j_complex_orders(int max_order, cplx z) {
  std::vector<cplx> out(static_cast<std::size_t>(max_order) + 1, cplx(0.0));
  if (std::abs(z) <= kSeriesRadius) {
    for (int n = 0; n <= max_order; ++n) out[static_cast<std::size_t>(n)] = series_j(n, z, false);
    return out;
  }
  // Generating function at theta = -/+pi/2:
  //   exp(-iz) = J_0 + 2 sum_k (-i)^k J_k   (used for Im z >= 0)
  //   exp(+iz) = J_0 + 2 sum_k (+i)^k J_k   (used for Im z <  0)
  // Picking the branch with |exp(...)| >= 1 avoids cancellation in the sum.
  const bool upper = z.imag() >= 0.0;
  const cplx unit = upper ? cplx(0.0, -1.0) : cplx(0.0, 1.0);
  auto weight = [unit](int k) {
    switch (k & 3) {
      case 0: return cplx(1.0);
      case 1: return unit;
      case 2: return cplx(-1.0);
      default: return -unit;
    }
  };
  cplx norm;
  out = miller(max_order, z, 1.0, weight, norm);
  const cplx target = upper ? std::exp(cplx(0.0, -1.0) * z) : std::exp(cplx(0.0, 1.0) * z);
  const cplx scale = target / norm;
  for (cplx& v : out) v *= scale;
  return out;
}

// J_n(iy) = i^n I_n(y)
std::vector<cplx> j_imaginary_orders(int max_order, double y) {
  const std::vector<double> in = bessel_i_orders(max_order, y);
  std::vector<cplx> out(in.size());
  for (std::size_t n = 0; n < in.size(); ++n) {
    switch (n & 3) {
      case 0: out[n] = cplx(in[n], 0.0); break;
      case 1: out[n] = cplx(0.0, in[n]); break;
      case 2: out[n] = cplx(-in[n], 0.0); break;
      default: out[n] = cplx(0.0, -in[n]); break;
    }
  }
  return out;
}

}  // namespace

std::vector<double> bessel_i_orders(int max_order, double y) {
  check_domain(max_order, cplx(0.0, y));
  if (max_order < 0) throw DomainError("bessel_i_orders needs a non-negative order bound");
  const bool negate_odd = y < 0.0;
  const double ay = std::fabs(y);
  std::vector<double> out(static_cast<std::size_t>(max_order) + 1, 0.0);
  if (ay == 0.0) {
    out[0] = 1.0;
    return out;
  }
  if (ay <= kSeriesRadius) {
    for (int n = 0; n <= max_order; ++n) out[static_cast<std::size_t>(n)] = series_j(n, ay, true);
  } else {
    // I_0 + 2 sum_k I_k = exp(y), all terms positive.
    double norm = 0.0;
    out = miller(max_order, ay, -1.0, [](int) { return 1.0; }, norm);
    const double factor = std::exp(ay) / norm;
    if (std::isfinite(factor)) {
      for (double& v : out) v *= factor;
    } else {
      const double log_scale = ay - std::log(norm);
      for (double& v : out) {
        if (v != 0.0) v = std::exp(std::log(v) + log_scale);
      }
    }
  }
  if (negate_odd) {
    for (int n = 1; n <= max_order; n += 2) out[static_cast<std::size_t>(n)] = -out[static_cast<std::size_t>(n)];
  }
  return out;
}

std::vector<cplx> bessel_j_orders(int max_order, cplx z) {
  check_domain(max_order, z);
  if (max_order < 0) throw DomainError("bessel_j_orders needs a non-negative order bound");
  if (z.imag() == 0.0) {
    const std::vector<double> re = j_real_orders(max_order, z.real());
    return {re.begin(), re.end()};
  }
  if (z.real() == 0.0) return j_imaginary_orders(max_order, z.imag());
  return j_complex_orders(max_order, z);
}

cplx bessel_j(int order, cplx z) {
  check_domain(order, z);
  const int m = order < 0 ? -order : order;
  const cplx v = bessel_j_orders(m, z)[static_cast<std::size_t>(m)];
  return (order < 0 && (m & 1)) ? -v : v;
}

BesselTable::BesselTable(cplx z, int max_order) : z_(z), values_(bessel_j_orders(max_order, z)) {
  max_abs_ = 0.0;
  for (const cplx& v : values_) max_abs_ = std::max(max_abs_, std::abs(v));
}

}  // namespace floquet::specfun
