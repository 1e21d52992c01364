#pragma once

// Reference computations that avoid the closed-form derivations used by the
// solvers: geometry straight from the Cartesian embedding, elasticity in
// Cartesian coordinates, elliptic integrals from an independent library and
// plain quadrature, and the membrane boundary-value problem solved by finite
// differences.

#include <array>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include <boost/math/special_functions/ellint_2.hpp>

#include "shellfound/geometry.hpp"
#include "shellfound/material.hpp"

namespace shellfound::oracle {

using Vec3 = std::array<double, 3>;

inline double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

/// Cartesian position of chart point (x1, x2, x3).
inline Vec3 embedding(const SurfaceFamily& s, const Vec3& x) {
  const double sn = std::sin(x[1]), cs = std::cos(x[1]);
  const double f = std::sqrt(s.b() * s.b() * sn * sn + s.a() * s.a() * cs * cs);
  return {x[0], s.a() * sn + x[2] * s.b() * sn / f, s.b() * cs + x[2] * s.a() * cs / f};
}

/// First partial derivatives d_i X by fourth-order central differences.
inline std::array<Vec3, 3> tangents_fd(const SurfaceFamily& s, const Vec3& x, double h = 1e-3) {
  std::array<Vec3, 3> t{};
  for (int i = 0; i < 3; ++i) {
    auto at = [&](double d) {
      Vec3 y = x;
      y[i] += d;
      return embedding(s, y);
    };
    const Vec3 p1 = at(h), m1 = at(-h), p2 = at(2 * h), m2 = at(-2 * h);
    for (int c = 0; c < 3; ++c) t[i][c] = (8.0 * (p1[c] - m1[c]) - (p2[c] - m2[c])) / (12.0 * h);
  }
  return t;
}

inline std::array<std::array<double, 3>, 3> metric_fd(const SurfaceFamily& s, const Vec3& x) {
  const auto t = tangents_fd(s, x);
  std::array<std::array<double, 3>, 3> g{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) g[i][j] = dot(t[i], t[j]);
  return g;
}

/// Gamma^k_ij = g^kl (d_i d_j X . d_l X) with second derivatives of the
/// embedding by central differences of the given step; indices 0-based.
inline std::array<std::array<std::array<double, 3>, 3>, 3> christoffel_fd(const SurfaceFamily& s,
                                                                           const Vec3& x,
                                                                           double step = 1e-4) {
  const auto t = tangents_fd(s, x);
  auto g = metric_fd(s, x);
  // invert the 3x3 metric
  std::array<std::array<double, 3>, 3> gi{};
  const double det = g[0][0] * (g[1][1] * g[2][2] - g[1][2] * g[2][1]) -
                     g[0][1] * (g[1][0] * g[2][2] - g[1][2] * g[2][0]) +
                     g[0][2] * (g[1][0] * g[2][1] - g[1][1] * g[2][0]);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const int i1 = (j + 1) % 3, i2 = (j + 2) % 3, j1 = (i + 1) % 3, j2 = (i + 2) % 3;
      gi[i][j] = (g[i1][j1] * g[i2][j2] - g[i1][j2] * g[i2][j1]) / det;
    }
  auto X = [&](double di, int i, double dj, int j) {
    Vec3 y = x;
    y[i] += di;
    y[j] += dj;
    return embedding(s, y);
  };
  std::array<std::array<std::array<double, 3>, 3>, 3> G{};
  const double h = step;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      Vec3 dd{};
      for (int c = 0; c < 3; ++c) {
        if (i == j) {
          dd[c] = (X(h, i, 0, j)[c] - 2.0 * X(0, i, 0, j)[c] + X(-h, i, 0, j)[c]) / (h * h);
        } else {
          dd[c] = (X(h, i, h, j)[c] - X(h, i, -h, j)[c] - X(-h, i, h, j)[c] + X(-h, i, -h, j)[c]) /
                  (4.0 * h * h);
        }
      }
      for (int k = 0; k < 3; ++k) {
        double v = 0.0;
        for (int l = 0; l < 3; ++l) v += gi[k][l] * dot(dd, t[l]);
        G[k][i][j] = v;
      }
    }
  return G;
}

// ---------------------------------------------------------------------------
// Elliptic integral references.

/// Boost's ellint_2 with modulus sqrt(e2) when 0 <= e2 <= 1, otherwise
/// composite 20-point Gauss-Legendre with 400 panels per radian.
inline double ellip_E_reference(double x2, double e2) {
  if (e2 >= 0.0 && e2 <= 1.0) return boost::math::ellint_2(std::sqrt(e2), x2);
  static const std::array<double, 10> xs{0.0765265211334973, 0.2277858511416451, 0.3737060887154195,
                                         0.5108670019508271, 0.6360536807265150, 0.7463319064601508,
                                         0.8391169718222188, 0.9122344282513259, 0.9639719272779138,
                                         0.9931285991850949};
  static const std::array<double, 10> ws{0.1527533871307258, 0.1491729864726037, 0.1420961093183820,
                                         0.1316886384491766, 0.1181945319615184, 0.1019301198172404,
                                         0.0832767415767048, 0.0626720483341091, 0.0406014298003869,
                                         0.0176140071391521};
  auto f = [e2](double t) { return std::sqrt(1.0 - e2 * std::sin(t) * std::sin(t)); };
  const int panels = std::max(1, static_cast<int>(std::ceil(std::abs(x2) * 400.0)));
  const double w = x2 / panels;
  double total = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double c = (p + 0.5) * w;
    for (std::size_t q = 0; q < xs.size(); ++q)
      total += ws[q] * (f(c - 0.5 * w * xs[q]) + f(c + 0.5 * w * xs[q]));
  }
  return 0.5 * w * total;
}

// ---------------------------------------------------------------------------
// Cartesian elasticity of a chart-defined displacement.

/// Displacement given by chart components: contravariant u2 and normal u3.
struct ChartField {
  std::function<double(double, double)> u2;
  std::function<double(double, double)> u3;
};

/// Chart coordinates (x2, x3) of a Cartesian point (y, z) by Newton's method
/// from a nearby starting guess.
inline std::array<double, 2> chart_of(const SurfaceFamily& s, double y, double z, std::array<double, 2> guess) {
  for (int it = 0; it < 60; ++it) {
    const Vec3 X = embedding(s, {0.0, guess[0], guess[1]});
    const auto t = tangents_fd(s, {0.0, guess[0], guess[1]}, 1e-4);
    const double ry = X[1] - y, rz = X[2] - z;
    // J = [t2 t3] restricted to (y, z)
    const double a = t[1][1], b = t[2][1], c = t[1][2], d = t[2][2];
    const double det = a * d - b * c;
    const double d2 = (d * ry - b * rz) / det, d3 = (-c * ry + a * rz) / det;
    guess[0] -= d2;
    guess[1] -= d3;
    if (std::abs(d2) + std::abs(d3) < 1e-15) break;
  }
  return guess;
}

/// Cartesian (y, z) displacement at a Cartesian point near chart point ref.
inline std::array<double, 2> cartesian_displacement(const SurfaceFamily& s, const ChartField& u, double y,
                                                    double z, std::array<double, 2> ref) {
  const auto xi = chart_of(s, y, z, ref);
  const double sn = std::sin(xi[0]), cs = std::cos(xi[0]);
  const double a = s.a(), b = s.b();
  const double f = std::sqrt(b * b * sn * sn + a * a * cs * cs);
  const double df = (b * b - a * a) * sn * cs / f;
  // d/dx2 of the embedding, differentiated by hand
  const double ty = a * cs + xi[1] * b * (cs * f - sn * df) / (f * f);
  const double tz = -b * sn + xi[1] * a * (-sn * f - cs * df) / (f * f);
  const double v = u.u2(xi[0], xi[1]), w = u.u3(xi[0], xi[1]);
  return {v * ty + w * b * sn / f, v * tz + w * a * cs / f};
}

/// Covariant components (f . d2X, f . N) of the Navier body-force term
/// mu lap U + (lambda + mu) grad div U at chart point (x2, x3), computed by
/// fourth-order Cartesian finite differences through the inverse map.
inline std::array<double, 2> navier_cartesian(const SurfaceFamily& s, const LameParameters& c,
                                              const ChartField& u, double x2, double x3, double h = 2e-3) {
  const Vec3 P = embedding(s, {0.0, x2, x3});
  const std::array<double, 2> ref{x2, x3};
  auto U = [&](double dy, double dz) { return cartesian_displacement(s, u, P[1] + dy, P[2] + dz, ref); };
  const std::array<double, 5> off{-2, -1, 0, 1, 2};
  const std::array<double, 5> d1{1.0 / 12, -8.0 / 12, 0.0, 8.0 / 12, -1.0 / 12};
  const std::array<double, 5> d2{-1.0 / 12, 16.0 / 12, -30.0 / 12, 16.0 / 12, -1.0 / 12};
  std::array<double, 2> Uyy{}, Uzz{}, Uyz{};
  for (int a = 0; a < 5; ++a) {
    const auto py = U(off[a] * h, 0.0), pz = U(0.0, off[a] * h);
    for (int k = 0; k < 2; ++k) {
      Uyy[k] += d2[a] * py[k] / (h * h);
      Uzz[k] += d2[a] * pz[k] / (h * h);
    }
    if (a == 2) continue;
    for (int b = 0; b < 5; ++b) {
      if (b == 2) continue;
      const auto q = U(off[a] * h, off[b] * h);
      for (int k = 0; k < 2; ++k) Uyz[k] += d1[a] * d1[b] * q[k] / (h * h);
    }
  }
  const double A = c.lambda + 2.0 * c.mu;
  const double fy = A * Uyy[0] + c.mu * Uzz[0] + (c.lambda + c.mu) * Uyz[1];
  const double fz = A * Uzz[1] + c.mu * Uyy[1] + (c.lambda + c.mu) * Uyz[0];
  const auto t = tangents_fd(s, {0.0, x2, x3}, 1e-4);
  const double sn = std::sin(x2), cs = std::cos(x2);
  const double f = std::sqrt(s.b() * s.b() * sn * sn + s.a() * s.a() * cs * cs);
  return {fy * t[1][1] + fz * t[1][2], (fy * s.b() * sn + fz * s.a() * cs) / f};
}

// ---------------------------------------------------------------------------
// Membrane boundary-value problem for W = phi w:
//   h Lam (W'/phi)' = (mu_f / L) phi W,   W'/phi = tau / Lam at both ends,
// by a conservative second-order scheme on n points; returns w at the nodes.

inline std::vector<double> membrane_bvp(const ModelParams& p, int n) {
  if (n < 5) throw std::invalid_argument("membrane_bvp: need at least five points");
  const double Lam = lambda_plane(p.shell), mu = lame(p.foundation).mu;
  const double d = pi / (n - 1);
  auto x = [&](double k) { return -half_pi + k * d; };
  std::vector<double> lo(n), di(n), up(n), rhs(n, 0.0);
  for (int k = 0; k < n; ++k) {
    const double ph = varphi(p.surface, x(k));
    const double cm = 1.0 / varphi(p.surface, x(k - 0.5)), cp = 1.0 / varphi(p.surface, x(k + 0.5));
    lo[k] = p.h * Lam * cm / (d * d);
    up[k] = p.h * Lam * cp / (d * d);
    di[k] = -(lo[k] + up[k]) - mu / p.L * ph;
  }
  // ghost W_{-1} = W_1 - 2 d phi_0 tau0 / Lam, W_n = W_{n-2} + 2 d phi_{n-1} tau_max / Lam
  const double g0 = 2.0 * d * varphi(p.surface, x(0)) * p.tau0 / Lam;
  const double g1 = 2.0 * d * varphi(p.surface, x(n - 1)) * p.tau_max / Lam;
  up[0] += lo[0];
  rhs[0] += lo[0] * g0;
  lo[n - 1] += up[n - 1];
  rhs[n - 1] -= up[n - 1] * g1;
  lo[0] = up[n - 1] = 0.0;
  // Thomas algorithm
  for (int k = 1; k < n; ++k) {
    const double m = lo[k] / di[k - 1];
    di[k] -= m * up[k - 1];
    rhs[k] -= m * rhs[k - 1];
  }
  std::vector<double> W(n);
  W[n - 1] = rhs[n - 1] / di[n - 1];
  for (int k = n - 2; k >= 0; --k) W[k] = (rhs[k] - up[k] * W[k + 1]) / di[k];
  for (int k = 0; k < n; ++k) W[k] /= varphi(p.surface, x(k));
  return W;
}

}  // namespace shellfound::oracle
