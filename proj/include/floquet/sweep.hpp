#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "floquet/observables.hpp"
#include "floquet/solver.hpp"
#include "floquet/static_oracle.hpp"

namespace floquet {

enum class SweepAxis { E0, Phi0, D };

/// Accepts "e0", "phi0" and "d".
SweepAxis parse_axis(std::string_view name);
std::string_view axis_name(SweepAxis axis);

/// One-dimensional scan. The parameter named by `axis` takes `steps` values
/// from min to max inclusive; every other parameter is held at its fixed value.
struct SweepSpec {
  SweepAxis axis = SweepAxis::E0;
  double min = 0.0;
  double max = 0.0;
  int steps = 2;
  bool log_spacing = false;  // geometric grid, only for positive ranges

  double e0 = 0.0;
  double f0 = 0.0;
  double omega = 1.0;
  double phi0 = 0.0;
  double l = 1.0;
  double d = 0.0;

  double tol = kDefaultTolerance;
  int n_max = kDefaultNMax;
  int threads = 0;  // 0 = hardware concurrency

  /// Throws ValidationError, including for fixed parameters that fail the
  /// model constructors at every grid point.
  void validate() const;
  double value(int index) const;
};

struct SpectrumRecord {
  int index = 0;
  double x_value = 0.0;
  double e0 = 0.0;  // energy actually solved, after any threshold shift
  double t_avg = 0.0;
  double r_avg = 0.0;
  double residual = 0.0;
  int n_used = 0;
  int n0 = 0;                // lowest propagating channel
  std::vector<double> jt;    // jT_n for n = n0, n0 + 1, ...
  std::string status = "ok"; // "ok", "shifted" or "error: <message>"

  bool ok() const { return status.rfind("error", 0) != 0; }
  double jt_at(int n) const;
};

/// Solves every grid point, spread over spec.threads workers. Records come back
/// in grid order. A point that lands on a channel threshold is retried with E0
/// raised by 1e-9 and marked "shifted"; any other solver failure becomes an
/// error row.
std::vector<SpectrumRecord> run_sweep(const SweepSpec& spec);

/// Header x_value,T_avg,R_avg,residual,n_used,jT[n]...,status with one jT
/// column per channel that propagates at any point of the sweep.
void write_spectrum_csv(std::ostream& os, const std::vector<SpectrumRecord>& records);
void write_spectrum_json(std::ostream& os, const SweepSpec& spec, const std::vector<SpectrumRecord>& records);

/// Header x,t,j,rho,force_sign; time-major rows.
void write_field_map_csv(std::ostream& os, const FieldMap& map);

/// Header x_value,T_static.
void write_static_spectrum_csv(std::ostream& os, const std::vector<double>& energies, const std::vector<double>& t);

/// Header index,energy,well_weight,localized.
void write_eigen_summary_csv(std::ostream& os, const EigenResult& res);

/// Header x,V,psi[0],psi[1],... for the first `count` states.
void write_eigen_states_csv(std::ostream& os, const EigenResult& res, int count);

/// Header n,E_n,k_re,k_im,q_re,q_im,propagating,propagating_in_field,jR,jT.
void write_channels_csv(std::ostream& os, const ScatteringSolution& sol);

/// Twelve significant digits, "nan" for NaN.
std::string format_number(double v);

}  // namespace floquet
