#pragma once

// Self-checks run by `shellfound verify`: each compares a library result to an
// independent reference from oracles.hpp or to an exact property.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "shellfound/analysis.hpp"
#include "shellfound/closed_form.hpp"
#include "shellfound/oracles.hpp"
#include "shellfound/solver.hpp"
#include "shellfound/two_body.hpp"

namespace shellfound {

struct CheckResult {
  std::string name;
  bool pass;
  std::string detail;
};

enum class VerifyLevel { quick, full };

namespace checks {

inline std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

inline CheckResult christoffel_vs_embedding(int points = 100, std::uint64_t seed = 11) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ub(1.5, 2.6), u2(-half_pi, half_pi), u3(-1.0, 0.25);
  double worst = 0.0;
  for (int n = 0; n < points; ++n) {
    const SurfaceFamily s(2.0, ub(rng));
    const double x2 = u2(rng), x3 = u3(rng);
    const auto G = oracle::christoffel_fd(s, {0.0, x2, x3});
    const ChristoffelSet C = christoffel(s, x2, x3);
    for (int k = 0; k < 3; ++k)
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) worst = std::max(worst, std::abs(G[k][i][j] - C(k + 1, i + 1, j + 1)));
  }
  return {"christoffel", worst <= 1e-6, fmt("max |Gamma - Gamma_fd| = %.2e over %g points", worst, points)};
}

inline CheckResult metric_vs_embedding(int points = 100, std::uint64_t seed = 12) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ub(1.5, 2.6), u2(-half_pi, half_pi), u3(-1.0, 0.25);
  double worst = 0.0;
  for (int n = 0; n < points; ++n) {
    const SurfaceFamily s(2.0, ub(rng));
    const double x2 = u2(rng), x3 = u3(rng);
    const auto g = oracle::metric_fd(s, {0.0, x2, x3});
    const double psi = psi_bar2(s, x2, x3);
    worst = std::max({worst, std::abs(g[1][2]), std::abs(g[2][2] - 1.0), std::abs(g[1][1] / (psi * psi) - 1.0),
                      std::abs(g[0][0] - 1.0), std::abs(g[0][1]), std::abs(g[0][2])});
  }
  return {"metric", worst <= 1e-8, fmt("max metric deviation = %.2e", worst)};
}

inline CheckResult ellip_E_vs_reference(int points = 50, std::uint64_t seed = 13) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ux(-pi, pi), ue(-3.0, 1.0);
  double worst = 0.0;
  for (int n = 0; n < points; ++n) {
    const double x = ux(rng), e2 = ue(rng);
    worst = std::max(worst, std::abs(ellip_E(x, e2) - oracle::ellip_E_reference(x, e2)));
  }
  return {"ellip_E", worst <= 1e-10, fmt("max |E - E_ref| = %.2e", worst)};
}

inline oracle::ChartField mms_field() {
  return {[](double a, double b) { return std::sin(1.3 * a + 0.4) * std::cos(0.7 * b); },
          [](double a, double b) { return std::cos(0.9 * a) * (1.0 + 0.5 * std::sin(1.1 * b + 0.2)); }};
}

/// Observed orders of the discrete Navier operator on three nested grids of
/// [-pi/2, pi/2] x [z0, z1], measured at the interior nodes of the coarsest.
inline std::vector<double> navier_mms_orders(const SurfaceFamily& s, const LameParameters& c, double z0, double z1,
                                             int coarse_rows, std::vector<double>* errors = nullptr) {
  const auto u = mms_field();
  const int n0 = 16, m0 = coarse_rows;
  std::vector<std::array<double, 2>> exact;
  std::vector<std::array<int, 2>> nodes;
  for (int j = 1; j < m0; ++j)
    for (int i = 1; i < n0; i += 2) nodes.push_back({i, j});
  const double dz0 = (z1 - z0) / m0;
  for (auto [i, j] : nodes)
    exact.push_back(oracle::navier_cartesian(s, c, u, -half_pi + i * pi / n0, z0 + j * dz0));
  double scale = 0.0;
  for (const auto& e : exact) scale = std::max({scale, std::abs(e[0]), std::abs(e[1])});

  std::vector<double> err;
  for (int level = 0; level < 3; ++level) {
    const int r = 1 << level;
    Grid g;
    g.N = n0 * r + 1;
    g.M = m0 * r + 1;
    g.dx2 = pi / (g.N - 1);
    g.dx3 = (z1 - z0) / (g.M - 1);
    g.x3_min = z0;
    Field2D f(g);
    for (int j = 0; j < g.M; ++j)
      for (int i = 0; i < g.N; ++i) {
        f.v(i, j) = u.u2(g.x2(i), g.x3(j));
        f.w(i, j) = u.u3(g.x2(i), g.x3(j));
      }
    double e = 0.0;
    for (std::size_t q = 0; q < nodes.size(); ++q) {
      const auto d = navier_at(FieldValues{&f}, s, c, g, nodes[q][0] * r, nodes[q][1] * r);
      e = std::max({e, std::abs(d[0] - exact[q][0]), std::abs(d[1] - exact[q][1])});
    }
    err.push_back(e / scale);
  }
  if (errors) *errors = err;
  return {std::log2(err[0] / err[1]), std::log2(err[1] / err[2])};
}

inline CheckResult mms_region(const char* name, const SurfaceFamily& s, const LameParameters& c, double z0,
                              double z1, int rows) {
  std::vector<double> err;
  const auto ord = navier_mms_orders(s, c, z0, z1, rows, &err);
  const bool ok = std::all_of(ord.begin(), ord.end(), [](double p) { return p >= 1.8 && p <= 2.2; });
  return {name, ok, fmt("orders %.3f, %.3f (finest relative error %.2e)", ord[0], ord[1], err[2])};
}

inline CheckResult mms_foundation() {
  const ModelParams p = params_from_deltas(default_deltas());
  return mms_region("mms_foundation", SurfaceFamily(2.0, 1.8), lame(p.foundation), -p.L, 0.0, 8);
}

inline CheckResult mms_layer() {
  const ModelParams p = params_from_deltas(figure_deltas());
  return mms_region("mms_layer", SurfaceFamily(2.0, 1.8), lame(p.shell), 0.0, p.h, 4);
}

/// Residual of the membrane equation h Lam ((phi w)'/phi)' - (mu_f/L) phi^2 w
/// for the closed form, sampled at 1000 points with difference step d.
inline double closed_form_ode_residual(const ModelParams& p, double d) {
  const double Lam = lambda_plane(p.shell), mu = lame(p.foundation).mu;
  auto W = [&](double x) { return varphi(p.surface, x) * w2_closed(p, x); };
  double worst = 0.0, scale = 0.0;
  const double lo = -half_pi + 2.0 * d, hi = half_pi - 2.0 * d;
  for (int k = 0; k < 1000; ++k) {
    const double x = lo + (hi - lo) * k / 999.0;
    const double flux = (W(x + d) - W(x)) / varphi(p.surface, x + 0.5 * d) -
                        (W(x) - W(x - d)) / varphi(p.surface, x - 0.5 * d);
    const double react = mu / p.L * varphi(p.surface, x) * W(x);
    worst = std::max(worst, std::abs(p.h * Lam * flux / (d * d) - react));
    scale = std::max(scale, std::abs(react));
  }
  return worst / scale;
}

inline CheckResult closed_form_ode() {
  ModelParams p = params_from_deltas(Deltas{8.0, 1.0, 0.125, 0.9});
  const double r1 = closed_form_ode_residual(p, 0.04), r2 = closed_form_ode_residual(p, 0.02),
               r3 = closed_form_ode_residual(p, 0.01);
  const double o1 = std::log2(r1 / r2), o2 = std::log2(r2 / r3);
  const int n = 20001;
  const auto w = oracle::membrane_bvp(p, n);
  double rel = 0.0, scale = 0.0;
  for (int k = 0; k < n; k += 50) {
    const double x = -half_pi + pi * k / (n - 1);
    rel = std::max(rel, std::abs(w[k] - w2_closed(p, x)));
    scale = std::max(scale, std::abs(w[k]));
  }
  rel /= scale;
  const bool ok = o1 >= 1.8 && o1 <= 2.2 && o2 >= 1.8 && o2 <= 2.2 && rel <= 1e-6;
  return {"closed_form_ode", ok, fmt("residual orders %.3f, %.3f; boundary-value oracle rel. diff %.2e", o1, o2, rel)};
}

inline SolverConfig direct_config() {
  SolverConfig c;
  c.method = Method::direct;
  return c;
}

inline CheckResult energy_minimum(int N = 65, int trials = 50, double amp = 1e-6, std::uint64_t seed = 14) {
  const ModelParams p = params_from_deltas(default_deltas());
  const Grid g = build_grid(p, N);
  const ShellSolution s = solve(p, g, direct_config());
  const double J = discrete_energy(s.field, p, g);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(-amp, amp);
  int below = 0;
  double min_gain = 1e300;
  const int top = g.M - 1;
  for (int t = 0; t < trials; ++t) {
    Field2D d = s.field;
    for (int j = 1; j < g.M; ++j)
      for (int i = 0; i < g.N; ++i) {
        d.v(i, j) += U(rng);
        d.w(i, j) += U(rng);
      }
    d.ghost_lo += U(rng);
    d.ghost_hi += U(rng);
    // keep the one-sided zero slope of u3 at both ends of the contact row
    d.w(0, top) = (4.0 * d.w(1, top) - d.w(2, top)) / 3.0;
    d.w(N - 1, top) = (4.0 * d.w(N - 2, top) - d.w(N - 3, top)) / 3.0;
    const double gain = discrete_energy(d, p, g) - J;
    min_gain = std::min(min_gain, gain);
    if (gain < 0.0) ++below;
  }
  return {"energy_minimum", below == 0,
          fmt("%g of %g perturbations lowered J; min J - J* = %.3e", below, trials, min_gain)};
}

inline CheckResult zero_traction() {
  ModelParams p = params_from_deltas(default_deltas());
  p.tau0 = p.tau_max = 0.0;
  const TwoBodyGrid g = build_two_body_grid(p, 33);
  const ShellSolution s = solve(p, g.foundation, direct_config());
  const TwoBodySolution t = solve_two_body(p, g, direct_config());
  double m = 0.0;
  for (double x : s.field.u2) m = std::max(m, std::abs(x));
  for (double x : s.field.u3) m = std::max(m, std::abs(x));
  for (double x : t.field.foundation.u2) m = std::max(m, std::abs(x));
  for (double x : t.field.foundation.u3) m = std::max(m, std::abs(x));
  for (double x : t.field.layer.u2) m = std::max(m, std::abs(x));
  for (double x : t.field.layer.u3) m = std::max(m, std::abs(x));
  return {"zero_traction", m == 0.0, fmt("max |u| = %.3e", m)};
}

inline double max_rel_diff(const std::vector<double>& a, const std::vector<double>& b, double c) {
  double d = 0.0, s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    d = std::max(d, std::abs(a[k] - c * b[k]));
    s = std::max(s, std::abs(c * b[k]));
  }
  return d / s;
}

inline CheckResult traction_linearity(double c = 3.7) {
  ModelParams p = params_from_deltas(default_deltas());
  const TwoBodyGrid g = build_two_body_grid(p, 33);
  const ShellSolution s1 = solve(p, g.foundation, direct_config());
  const TwoBodySolution t1 = solve_two_body(p, g, direct_config());
  p.tau0 = p.tau_max = c;
  const ShellSolution sc = solve(p, g.foundation, direct_config());
  const TwoBodySolution tc = solve_two_body(p, g, direct_config());
  const double e = std::max({max_rel_diff(sc.field.u2, s1.field.u2, c), max_rel_diff(sc.field.u3, s1.field.u3, c),
                             max_rel_diff(tc.field.foundation.u2, t1.field.foundation.u2, c),
                             max_rel_diff(tc.field.layer.u3, t1.field.layer.u3, c)});
  return {"traction_linearity", e <= 1e-10, fmt("max relative deviation = %.2e", e)};
}

inline CheckResult jacobi_matches_direct(int N = 33) {
  const ModelParams p = params_from_deltas(default_deltas());
  const Grid g = build_grid(p, N);
  SolverConfig jc;
  jc.relax = 0.6;
  jc.tol = 1e-13;
  const ShellSolution a = solve(p, g, jc);
  const ShellSolution b = solve(p, g, direct_config());
  const double e = max_rel_diff(a.field.u2, b.field.u2, 1.0);
  return {"jacobi_vs_direct", a.report.converged && e <= 1e-8,
          fmt("converged=%g after %g sweeps, max rel. diff %.2e", a.report.converged, double(a.report.iterations), e)};
}

struct TraceExtremes {
  double u2_min, u2_max, u3_min, u3_max;
};

inline TraceExtremes row_ends(const Field2D& f, int row) {
  return {f.v(0, row), f.v(f.N - 1, row), f.w(0, row), f.w(f.N - 1, row)};
}

inline bool within(double value, double target, double rel) { return std::abs(value - target) <= rel * std::abs(target); }

inline CheckResult figure1(Method m = Method::direct) {
  const ModelParams p = params_from_deltas(figure_deltas());
  const Grid g = build_grid(p, 250);
  SolverConfig c;
  c.method = m;
  c.relax = 0.6;
  const ShellSolution s = solve(p, g, c);
  const auto e = row_ends(s.field, g.M - 1);
  const bool ok = s.report.converged && within(e.u2_max, 2.75e-4, 0.05) && within(e.u2_min, -2.75e-4, 0.05) &&
                  within(e.u3_min, -2.26e-4, 0.05) && within(e.u3_max, -2.26e-4, 0.05);
  return {std::string("figure1_") + method_name(m), ok,
          fmt("u2(+-pi/2) = %.4e, u3(pi/2) = %.4e, sweeps %.0f", e.u2_max, e.u3_max, double(s.report.iterations))};
}

inline CheckResult figure2() {
  const ModelParams p = params_from_deltas(figure_deltas());
  const TwoBodyGrid g = build_two_body_grid(p, 250);
  const TwoBodySolution s = solve_two_body(p, g, direct_config());
  const auto e = row_ends(s.field.foundation, g.foundation.M - 1);
  const bool ok = s.report.converged && within(e.u2_max, 2.78e-4, 0.05) && within(e.u2_min, -2.78e-4, 0.05) &&
                  within(e.u3_min, -3.24e-4, 0.05) && within(e.u3_max, -3.24e-4, 0.05);
  return {"figure2", ok, fmt("v2(+-pi/2) = %.4e, v3(pi/2) = %.4e", e.u2_max, e.u3_max)};
}

}  // namespace checks

inline std::vector<CheckResult> verify(VerifyLevel level) {
  std::vector<std::function<CheckResult()>> suite{
      [] { return checks::christoffel_vs_embedding(); }, [] { return checks::metric_vs_embedding(); },
      [] { return checks::ellip_E_vs_reference(); },     [] { return checks::mms_foundation(); },
      [] { return checks::mms_layer(); },                [] { return checks::closed_form_ode(); },
      [] { return checks::energy_minimum(); },           [] { return checks::zero_traction(); },
      [] { return checks::traction_linearity(); },       [] { return checks::jacobi_matches_direct(); }};
  if (level == VerifyLevel::full) {
    suite.push_back([] { return checks::figure1(Method::direct); });
    suite.push_back([] { return checks::figure2(); });
    suite.push_back([] { return checks::figure1(Method::jacobi); });
  }
  std::vector<CheckResult> out;
  for (const auto& check : suite) {
    try {
      out.push_back(check());
    } catch (const std::exception& e) {
      out.push_back({"exception", false, e.what()});
    }
  }
  return out;
}

}  // namespace shellfound
