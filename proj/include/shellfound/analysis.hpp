#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "shellfound/closed_form.hpp"
#include "shellfound/solver.hpp"
#include "shellfound/two_body.hpp"

namespace shellfound {

/// (sum |a - b|^2)^(1/2) / (sum |a + b|^2)^(1/2) over foundation rows
/// 1..M-1 (every row above the clamped bottom) and all columns, for
/// component 2 (u2) or 3 (u3).  nullopt when the denominator vanishes.
inline std::optional<double> relative_error(const Field2D& shell, const Field2D& two_body, int component) {
  if (component != 2 && component != 3) throw std::invalid_argument("relative_error: component must be 2 or 3");
  if (shell.N != two_body.N || shell.M != two_body.M)
    throw std::invalid_argument("relative_error: runs are on different foundation grids");
  const auto& a = component == 2 ? shell.u2 : shell.u3;
  const auto& b = component == 2 ? two_body.u2 : two_body.u3;
  double diff = 0.0, sum = 0.0;
  for (std::size_t n = static_cast<std::size_t>(shell.N); n < a.size(); ++n) {
    diff += (a[n] - b[n]) * (a[n] - b[n]);
    sum += (a[n] + b[n]) * (a[n] + b[n]);
  }
  if (sum == 0.0) return std::nullopt;
  return std::sqrt(diff / sum);
}

inline std::optional<double> relative_error(const Field2D& shell, const TwoBodyField& two_body, int component) {
  return relative_error(shell, two_body.foundation, component);
}

enum class SweepParam { dE, dnu, dh, db };

inline SweepParam parse_sweep_param(const std::string& s) {
  if (s == "dE") return SweepParam::dE;
  if (s == "dnu") return SweepParam::dnu;
  if (s == "dh") return SweepParam::dh;
  if (s == "db") return SweepParam::db;
  throw std::invalid_argument("unknown sweep parameter '" + s + "' (expected dE, dnu, dh or db)");
}

inline const char* sweep_param_name(SweepParam p) {
  switch (p) {
    case SweepParam::dE: return "dE";
    case SweepParam::dnu: return "dnu";
    case SweepParam::dh: return "dh";
    default: return "db";
  }
}

inline Deltas with_delta(Deltas d, SweepParam p, double value) {
  switch (p) {
    case SweepParam::dE: d.dE = value; break;
    case SweepParam::dnu: d.dnu = value; break;
    case SweepParam::dh: d.dh = value; break;
    case SweepParam::db: d.db = value; break;
  }
  return d;
}

struct ErrorSample {
  double delta = 0.0;
  double azimuthal = std::nan("");
  double radial = std::nan("");
  bool converged_shell = false;
  bool converged_two_body = false;
  double phi_scale = std::nan("");
  std::string note;  // why the sample is invalid, if it is

  bool valid() const { return converged_shell && converged_two_body && std::isfinite(azimuthal) && std::isfinite(radial); }
};

struct ErrorCurve {
  SweepParam param = SweepParam::dE;
  Deltas fixed;
  std::vector<ErrorSample> samples;
};

struct SweepOptions {
  int N = 250;
  SolverConfig solver{Method::direct};
  int workers = 1;  // concurrent sweep points
};

inline ErrorSample error_sample(const Deltas& d, double delta, const SweepOptions& opt) {
  ErrorSample s;
  s.delta = delta;
  try {
    const ModelParams p = params_from_deltas(d);
    s.phi_scale = scales(p).phi_scale;
    const TwoBodyGrid g = build_two_body_grid(p, opt.N);
    SolverConfig cfg = opt.solver;
    cfg.workers = 1;
    const ShellSolution sh = solve(p, g.foundation, cfg);
    const TwoBodySolution tb = solve_two_body(p, g, cfg);
    s.converged_shell = sh.report.converged;
    s.converged_two_body = tb.report.converged;
    s.azimuthal = relative_error(sh.field, tb.field, 2).value_or(std::nan(""));
    s.radial = relative_error(sh.field, tb.field, 3).value_or(std::nan(""));
  } catch (const std::exception& e) {
    s.note = e.what();
  }
  return s;
}

/// Solves both models at every value; failures mark the sample invalid.
inline ErrorCurve sweep(SweepParam param, std::vector<double> values, const Deltas& fixed,
                        const SweepOptions& opt) {
  std::sort(values.begin(), values.end());
  if (std::adjacent_find(values.begin(), values.end()) != values.end())
    throw std::invalid_argument("sweep: repeated sample value");
  ErrorCurve curve{param, fixed, std::vector<ErrorSample>(values.size())};
  const int n = static_cast<int>(values.size());
#pragma omp parallel for schedule(dynamic) num_threads(std::max(1, opt.workers))
  for (int k = 0; k < n; ++k) {
    const double v = values[static_cast<std::size_t>(k)];
    curve.samples[static_cast<std::size_t>(k)] = error_sample(with_delta(fixed, param, v), v, opt);
  }
  return curve;
}

enum class ErrorComponent { azimuthal, radial };
enum class ExtremumKind { min, max };

struct Extremum {
  double delta;
  double value;
  std::size_t index;   // into curve.samples
  bool monotone;       // extremum sits at an end of the valid samples
  double refined_delta;  // vertex of the parabola through the neighbours, = delta at an end
};

inline Extremum locate_extremum(const ErrorCurve& curve, ErrorComponent comp, ExtremumKind kind) {
  std::vector<std::size_t> ok;
  for (std::size_t k = 0; k < curve.samples.size(); ++k)
    if (curve.samples[k].valid()) ok.push_back(k);
  if (ok.empty()) throw std::runtime_error("locate_extremum: every sample is invalid");
  if (ok.size() < 3) throw std::runtime_error("locate_extremum: fewer than three valid samples");
  auto val = [&](std::size_t k) {
    const ErrorSample& s = curve.samples[k];
    const double v = comp == ErrorComponent::azimuthal ? s.azimuthal : s.radial;
    return kind == ExtremumKind::min ? v : -v;
  };
  std::size_t best = 0;
  for (std::size_t q = 1; q < ok.size(); ++q)
    if (val(ok[q]) < val(ok[best])) best = q;
  const std::size_t k = ok[best];
  Extremum e{curve.samples[k].delta, kind == ExtremumKind::min ? val(k) : -val(k), k,
             best == 0 || best + 1 == ok.size(), curve.samples[k].delta};
  if (!e.monotone) {
    const double x0 = curve.samples[ok[best - 1]].delta, x1 = e.delta, x2 = curve.samples[ok[best + 1]].delta;
    const double y0 = val(ok[best - 1]), y1 = val(k), y2 = val(ok[best + 1]);
    const double num = (x1 - x0) * (x1 - x0) * (y1 - y2) - (x1 - x2) * (x1 - x2) * (y1 - y0);
    const double den = (x1 - x0) * (y1 - y2) - (x1 - x2) * (y1 - y0);
    if (den != 0.0) e.refined_delta = x1 - 0.5 * num / den;
  }
  return e;
}

inline void write_curve_csv(std::ostream& os, const ErrorCurve& curve) {
  os << "delta,azimuthal_error,radial_error,converged_shell,converged_twobody,phi_scale\n";
  char buf[256];
  for (const ErrorSample& s : curve.samples) {
    std::snprintf(buf, sizeof buf, "%.6g,%.9e,%.9e,%d,%d,%.9e\n", s.delta, s.azimuthal, s.radial,
                  s.converged_shell ? 1 : 0, s.converged_two_body ? 1 : 0, s.phi_scale);
    os << buf;
  }
}

}  // namespace shellfound
