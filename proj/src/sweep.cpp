#include "floquet/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

#include "floquet/errors.hpp"
#include "json.hpp"
#include "floquet/parallel.hpp"

namespace floquet {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct PointParams {
  double e0, f0, omega, phi0, l, d;
};

PointParams params_at(const SweepSpec& spec, double x) {
  PointParams p{spec.e0, spec.f0, spec.omega, spec.phi0, spec.l, spec.d};
  switch (spec.axis) {
    case SweepAxis::E0: p.e0 = x; break;
    case SweepAxis::Phi0: p.phi0 = x; break;
    case SweepAxis::D: p.d = x; break;
  }
  return p;
}

void fill(SpectrumRecord& rec, const ScatteringSolution& sol) {
  const ChannelCurrents cc = channel_currents(sol);
  rec.t_avg = sol.t_avg;
  rec.r_avg = sol.r_avg;
  rec.residual = sol.unitarity_residual;
  rec.n_used = sol.n_used;
  rec.n0 = cc.n0;
  rec.jt = cc.transmitted;
}

// Commas and line breaks would break the CSV row.
std::string sanitize(std::string s) {
  for (char& c : s) {
    if (c == ',' || c == '\n' || c == '\r') c = ';';
  }
  return s;
}

SpectrumRecord solve_point(const SweepSpec& spec, int index) {
  SpectrumRecord rec;
  rec.index = index;
  rec.x_value = spec.value(index);
  PointParams p = params_at(spec, rec.x_value);
  rec.e0 = p.e0;
  try {
    const FieldParams field(p.f0, p.omega, p.phi0);
    const Geometry geom(p.l, p.d);
    try {
      fill(rec, solve_adaptive(BeamParams(p.e0), field, geom, spec.tol, kDefaultNStart, spec.n_max));
    } catch (const ThresholdDegeneracy& e) {
      rec.e0 = p.e0 + e.suggested_shift();
      fill(rec, solve_adaptive(BeamParams(rec.e0), field, geom, spec.tol, kDefaultNStart, spec.n_max));
      rec.status = "shifted";
    }
  } catch (const std::exception& e) {
    rec.t_avg = rec.r_avg = rec.residual = kNaN;
    rec.n_used = 0;
    rec.jt.clear();
    rec.status = "error: " + sanitize(e.what());
  }
  return rec;
}

}  // namespace

SweepAxis parse_axis(std::string_view name) {
  if (name == "e0") return SweepAxis::E0;
  if (name == "phi0") return SweepAxis::Phi0;
  if (name == "d") return SweepAxis::D;
  throw ValidationError("unknown sweep axis '" + std::string(name) + "' (expected e0, phi0 or d)");
}

std::string_view axis_name(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::E0: return "e0";
    case SweepAxis::Phi0: return "phi0";
    case SweepAxis::D: return "d";
  }
  return "";
}

void SweepSpec::validate() const {
  if (!std::isfinite(min) || !std::isfinite(max) || !(min < max)) throw ValidationError("sweep needs min < max");
  if (steps < 2) throw ValidationError("sweep needs steps >= 2");
  if (log_spacing && !(min > 0.0)) throw ValidationError("log spacing needs min > 0");
  if (!(tol > 0.0)) throw ValidationError("tolerance must be positive");
  if (n_max < kDefaultNStart) throw ValidationError("n-max must be >= " + std::to_string(kDefaultNStart));
  if (threads < 0) throw ValidationError("threads must be >= 0");
  // Every fixed parameter is checked by constructing the model at both ends.
  for (double x : {min, max}) {
    const PointParams p = params_at(*this, x);
    BeamParams{p.e0};
    FieldParams{p.f0, p.omega, p.phi0};
    Geometry{p.l, p.d};
  }
}

double SweepSpec::value(int index) const {
  if (index == 0) return min;
  if (index == steps - 1) return max;
  const double f = static_cast<double>(index) / (steps - 1);
  if (log_spacing) return min * std::pow(max / min, f);
  return min + (max - min) * f;
}

double SpectrumRecord::jt_at(int n) const {
  if (n < n0 || n >= n0 + static_cast<int>(jt.size())) return 0.0;
  return jt[static_cast<std::size_t>(n - n0)];
}

std::vector<SpectrumRecord> run_sweep(const SweepSpec& spec) {
  spec.validate();
  std::vector<SpectrumRecord> out(static_cast<std::size_t>(spec.steps));
  parallel_for(out.size(), spec.threads,
               [&](std::size_t i) { out[i] = solve_point(spec, static_cast<int>(i)); });
  return out;
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void write_spectrum_csv(std::ostream& os, const std::vector<SpectrumRecord>& records) {
  int lo = 0;
  int hi = -1;
  for (const SpectrumRecord& r : records) {
    if (r.jt.empty()) continue;
    const int top = r.n0 + static_cast<int>(r.jt.size()) - 1;
    if (hi < lo) {
      lo = r.n0;
      hi = top;
    } else {
      lo = std::min(lo, r.n0);
      hi = std::max(hi, top);
    }
  }
  os << "x_value,T_avg,R_avg,residual,n_used";
  for (int n = lo; n <= hi; ++n) os << ",jT[" << n << "]";
  os << ",status\n";
  for (const SpectrumRecord& r : records) {
    os << format_number(r.x_value) << ',' << format_number(r.t_avg) << ',' << format_number(r.r_avg) << ','
       << format_number(r.residual) << ',' << r.n_used;
    for (int n = lo; n <= hi; ++n) os << ',' << (r.ok() ? format_number(r.jt_at(n)) : "nan");
    os << ',' << r.status << '\n';
  }
}

void write_spectrum_json(std::ostream& os, const SweepSpec& spec, const std::vector<SpectrumRecord>& records) {
  nlohmann::ordered_json doc;
  doc["axis"] = axis_name(spec.axis);
  doc["parameters"] = {{"e0", spec.e0}, {"f0", spec.f0},   {"omega", spec.omega}, {"phi0", spec.phi0},
                       {"L", spec.l},   {"d", spec.d},     {"tol", spec.tol},     {"n_max", spec.n_max},
                       {"min", spec.min}, {"max", spec.max}, {"steps", spec.steps}, {"log", spec.log_spacing}};
  auto& rows = doc["records"] = nlohmann::ordered_json::array();
  for (const SpectrumRecord& r : records) {
    nlohmann::ordered_json row;
    row["x_value"] = r.x_value;
    row["e0"] = r.e0;
    // NaN has no JSON spelling; error rows carry null.
    row["T_avg"] = r.ok() ? nlohmann::ordered_json(r.t_avg) : nullptr;
    row["R_avg"] = r.ok() ? nlohmann::ordered_json(r.r_avg) : nullptr;
    row["residual"] = r.ok() ? nlohmann::ordered_json(r.residual) : nullptr;
    row["n_used"] = r.n_used;
    row["n0"] = r.n0;
    row["jT"] = r.jt;
    row["status"] = r.status;
    rows.push_back(std::move(row));
  }
  os << doc.dump(2) << '\n';
}

void write_field_map_csv(std::ostream& os, const FieldMap& map) {
  os << "x,t,j,rho,force_sign\n";
  for (std::size_t it = 0; it < map.t.size(); ++it) {
    for (std::size_t ix = 0; ix < map.x.size(); ++ix) {
      const std::size_t k = map.at(it, ix);
      os << format_number(map.x[ix]) << ',' << format_number(map.t[it]) << ',' << format_number(map.j[k]) << ','
         << format_number(map.rho[k]) << ',' << map.force_sign[k] << '\n';
    }
  }
}

void write_static_spectrum_csv(std::ostream& os, const std::vector<double>& energies, const std::vector<double>& t) {
  if (energies.size() != t.size()) throw Error("static spectrum columns differ in length");
  os << "x_value,T_static\n";
  for (std::size_t i = 0; i < t.size(); ++i) os << format_number(energies[i]) << ',' << format_number(t[i]) << '\n';
}

void write_eigen_summary_csv(std::ostream& os, const EigenResult& res) {
  os << "index,energy,well_weight,localized\n";
  for (std::size_t i = 0; i < res.energies.size(); ++i) {
    os << i << ',' << format_number(res.energies[i]) << ',' << format_number(res.well_weight[i]) << ','
       << (res.localized[i] ? 1 : 0) << '\n';
  }
}

void write_eigen_states_csv(std::ostream& os, const EigenResult& res, int count) {
  const std::size_t m = std::min<std::size_t>(static_cast<std::size_t>(std::max(count, 0)), res.states.size());
  os << "x,V";
  for (std::size_t k = 0; k < m; ++k) os << ",psi[" << k << "]";
  os << '\n';
  for (std::size_t i = 0; i < res.grid.size(); ++i) {
    os << format_number(res.grid[i]) << ',' << format_number(res.potential[i]);
    for (std::size_t k = 0; k < m; ++k) os << ',' << format_number(res.states[k][i]);
    os << '\n';
  }
}

void write_channels_csv(std::ostream& os, const ScatteringSolution& sol) {
  const ChannelCurrents cc = channel_currents(sol);
  os << "n,E_n,k_re,k_im,q_re,q_im,propagating,propagating_in_field,jR,jT\n";
  for (const Channel& c : sol.channels.channels()) {
    os << c.n << ',' << format_number(c.energy) << ',' << format_number(c.k.real()) << ','
       << format_number(c.k.imag()) << ',' << format_number(c.q.real()) << ',' << format_number(c.q.imag()) << ','
       << (c.propagating ? 1 : 0) << ',' << (c.propagating_in_field ? 1 : 0) << ',' << format_number(cc.jr(c.n))
       << ',' << format_number(cc.jt(c.n)) << '\n';
  }
}

}  // namespace floquet
