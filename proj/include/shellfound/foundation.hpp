#pragma once

// Linear elasticity of the foundation in the orthogonal chart (x2, x3) with
// metric diag(psi^2, 1).  u2 is the contravariant azimuthal component and u3
// the normal component.  With Gamma^2_22 = psi_2/psi, Gamma^2_23 = psi_3/psi
// and Gamma^3_22 = -psi psi_3, the mixed stresses are
//
//   T^2_2 = (lambda + 2 mu) E^2_2 + lambda d3 u3
//   T^3_3 = lambda E^2_2 + (lambda + 2 mu) d3 u3
//   T^3_2 = mu (psi^2 d3 u2 + d2 u3)            (covariant in the lower index)
//   E^2_2 = d2 u2 + Gamma^2_22 u2 + Gamma^2_23 u3
//
// and equilibrium div T = 0 has covariant components
//
//   r2 = d2 T^2_2 + psi^-1 d3(psi T^3_2)
//   r3 = psi^-1 d2(psi T^2_3) + psi^-1 d3(psi T^3_3) - Gamma^2_23 T^2_2.

#include <array>
#include <stdexcept>
#include <vector>

#include "shellfound/geometry.hpp"
#include "shellfound/grid.hpp"
#include "shellfound/linear_form.hpp"
#include "shellfound/material.hpp"

namespace shellfound {

/// Value and partial derivatives of a scalar field at a point.
template <class T>
struct Jet {
  T f{};
  T d2{};
  T d3{};
  T d22{};
  T d33{};
  T d23{};
};

template <class T>
T mixed_strain22(const ChartMetric& m, const T& v, const T& v_2, const T& w) {
  return v_2 + (m.d2 / m.psi) * v + (m.d3 / m.psi) * w;
}

/// T^2_2: normal stress on an x2 = const face.
template <class T>
T stress22(const ChartMetric& m, const LameParameters& c, const T& v, const T& v_2, const T& w,
           const T& w_3) {
  return (c.lambda + 2.0 * c.mu) * mixed_strain22(m, v, v_2, w) + c.lambda * w_3;
}

/// T^3_3: normal stress on an x3 = const face.
template <class T>
T stress33(const ChartMetric& m, const LameParameters& c, const T& v, const T& v_2, const T& w,
           const T& w_3) {
  return c.lambda * mixed_strain22(m, v, v_2, w) + (c.lambda + 2.0 * c.mu) * w_3;
}

/// psi^2 d3 u2 + d2 u3, i.e. T^3_2 / mu.
template <class T>
T shear_form(const ChartMetric& m, const T& v_3, const T& w_2) {
  return (m.psi * m.psi) * v_3 + w_2;
}

/// Covariant components of div T for the given local jets.
template <class T>
std::array<T, 2> navier_residual(const ChartMetric& m, const LameParameters& c, const Jet<T>& v,
                                 const Jet<T>& w) {
  const double A = c.lambda + 2.0 * c.mu;
  const double lam = c.lambda, mu = c.mu;
  const double psi = m.psi;
  const double g2 = m.d2 / psi;                // Gamma^2_22
  const double g3 = m.d3 / psi;                // Gamma^2_23
  const double g2_2 = m.d22 / psi - g2 * g2;   // d2 Gamma^2_22
  const double g3_2 = m.d23 / psi - g3 * g2;   // d2 Gamma^2_23 = d3 Gamma^2_22
  const double g3_3 = -g3 * g3;                // d3 Gamma^2_23

  const T e22 = v.d2 + g2 * v.f + g3 * w.f;
  const T t22 = A * e22 + lam * w.d3;
  const T t33 = lam * e22 + A * w.d3;

  const T d2_t22 = A * (v.d22 + g2_2 * v.f + g2 * v.d2 + g3_2 * w.f + g3 * w.d2) + lam * w.d23;
  const T r2 = d2_t22 + mu * ((3.0 * psi * m.d3) * v.d3 + (psi * psi) * v.d33 + g3 * w.d2 + w.d23);

  const T d3_t33 = lam * (v.d23 + g3_2 * v.f + g2 * v.d3 + g3_3 * w.f + g3 * w.d3) + A * w.d33;
  const T r3 = mu * (g2 * v.d3 + v.d23 + (1.0 / (psi * psi)) * w.d22 -
                     (m.d2 / (psi * psi * psi)) * w.d2) +
               g3 * (t33 - t22) + d3_t33;
  return {r2, r3};
}

// ---------------------------------------------------------------------------
// Grid access.  An Access exposes v(i, j) and w(i, j) returning either stored
// values (double) or unknowns (LinearForm).

struct FieldValues {
  const Field2D* field;
  double v(int i, int j) const { return field->v(i, j); }
  double w(int i, int j) const { return field->w(i, j); }
  double ghost(int end) const { return end == 0 ? field->ghost_lo : field->ghost_hi; }
};

template <class Access>
using access_scalar_t = decltype(std::declval<const Access&>().v(0, 0));

enum class Diff { central, forward, backward };

namespace stencil {

template <class T, class F>
T first(const F& f, double h, Diff kind) {
  switch (kind) {
    case Diff::forward: return (-3.0 * f(0) + 4.0 * f(1) - f(2)) / (2.0 * h);
    case Diff::backward: return (3.0 * f(0) - 4.0 * f(-1) + f(-2)) / (2.0 * h);
    case Diff::central:
    default: return (f(1) - f(-1)) / (2.0 * h);
  }
}

template <class T, class F>
T second(const F& f, double h) {
  return (f(1) - 2.0 * f(0) + f(-1)) / (h * h);
}

inline Diff along_x2(const Grid& g, int i) {
  return i == 0 ? Diff::forward : (i == g.N - 1 ? Diff::backward : Diff::central);
}

}  // namespace stencil

/// Component accessor: comp 0 -> u2, comp 1 -> u3.
template <class Access>
auto component(const Access& u, int comp, int i, int j) {
  return comp == 0 ? u.v(i, j) : u.w(i, j);
}

template <class Access>
auto d_x2(const Access& u, int comp, const Grid& g, int i, int j, Diff kind) {
  using T = access_scalar_t<Access>;
  return stencil::first<T>([&](int k) { return component(u, comp, i + k, j); }, g.dx2, kind);
}

template <class Access>
auto d_x3(const Access& u, int comp, const Grid& g, int i, int j, Diff kind) {
  using T = access_scalar_t<Access>;
  return stencil::first<T>([&](int k) { return component(u, comp, i, j + k); }, g.dx3, kind);
}

/// Central-difference jet at (i, j); rows j - 1 and j + 1 must be readable.
template <class Access>
auto central_jet(const Access& u, int comp, const Grid& g, int i, int j) {
  using T = access_scalar_t<Access>;
  auto at = [&](int di, int dj) -> T { return component(u, comp, i + di, j + dj); };
  Jet<T> J;
  J.f = at(0, 0);
  J.d2 = (at(1, 0) - at(-1, 0)) / (2.0 * g.dx2);
  J.d3 = (at(0, 1) - at(0, -1)) / (2.0 * g.dx3);
  J.d22 = (at(1, 0) - 2.0 * at(0, 0) + at(-1, 0)) / (g.dx2 * g.dx2);
  J.d33 = (at(0, 1) - 2.0 * at(0, 0) + at(0, -1)) / (g.dx3 * g.dx3);
  J.d23 = (at(1, 1) - at(1, -1) - at(-1, 1) + at(-1, -1)) / (4.0 * g.dx2 * g.dx3);
  return J;
}

/// Second-order discrete Navier operator at a node whose neighbours exist.
template <class Access>
auto navier_at(const Access& u, const SurfaceFamily& s, const LameParameters& c, const Grid& g, int i,
               int j) {
  const ChartMetric m = chart_metric(s, g.x2(i), g.x3(j));
  return navier_residual(m, c, central_jet(u, 0, g, i, j), central_jet(u, 1, g, i, j));
}

/// Stresses on an x2 = const face at (i, j) with the given x3 stencil.
template <class Access>
auto side_stresses(const Access& u, const SurfaceFamily& s, const LameParameters& c, const Grid& g,
                   int i, int j, Diff x3_kind) {
  using T = access_scalar_t<Access>;
  const ChartMetric m = chart_metric(s, g.x2(i), g.x3(j));
  const Diff kx2 = stencil::along_x2(g, i);
  const T v = u.v(i, j), w = u.w(i, j);
  const T v2 = d_x2(u, 0, g, i, j, kx2), w2 = d_x2(u, 1, g, i, j, kx2);
  const T v3 = d_x3(u, 0, g, i, j, x3_kind), w3 = d_x3(u, 1, g, i, j, x3_kind);
  return std::array<T, 2>{shear_form(m, v3, w2), stress22(m, c, v, v2, w, w3)};
}

/// Stresses on an x3 = const face at (i, j): {T^3_2, T^3_3}.
template <class Access>
auto face_tractions(const Access& u, const SurfaceFamily& s, const LameParameters& c, const Grid& g,
                    int i, int j, Diff x3_kind) {
  using T = access_scalar_t<Access>;
  const ChartMetric m = chart_metric(s, g.x2(i), g.x3(j));
  const Diff kx2 = stencil::along_x2(g, i);
  const T v = u.v(i, j), w = u.w(i, j);
  const T v2 = d_x2(u, 0, g, i, j, kx2), w2 = d_x2(u, 1, g, i, j, kx2);
  const T v3 = d_x3(u, 0, g, i, j, x3_kind), w3 = d_x3(u, 1, g, i, j, x3_kind);
  return std::array<T, 2>{c.mu * shear_form(m, v3, w2), stress33(m, c, v, v2, w, w3)};
}

// ---------------------------------------------------------------------------
// Public residual operators of the foundation on a stored field.

struct FoundationResidual {
  double r2;
  double r3;
};

/// Navier residual at a strictly interior node (0 < i < N-1, 0 < j < M-1).
inline FoundationResidual interior_residual(const Field2D& u, const ModelParams& p, const Grid& g,
                                            int i, int j) {
  if (i <= 0 || i >= g.N - 1 || j <= 0 || j >= g.M - 1)
    throw std::out_of_range("interior_residual: node is on the boundary");
  if (!u.matches(g)) throw std::invalid_argument("interior_residual: field/grid mismatch");
  const auto r = navier_at(FieldValues{&u}, p.surface, lame(p.foundation), g, i, j);
  return {r[0], r[1]};
}

/// Bottom-row residuals (u2, u3) at x3 = -L.
inline std::vector<std::array<double, 2>> bottom_dirichlet(const Field2D& u) {
  std::vector<std::array<double, 2>> out(static_cast<std::size_t>(u.N));
  for (int i = 0; i < u.N; ++i) out[static_cast<std::size_t>(i)] = {u.v(i, 0), u.w(i, 0)};
  return out;
}

enum class Side { left, right };

/// Traction-free residuals on x2 = -pi/2 (left) or pi/2 (right) for
/// -L < x3 < 0: {psi^2 d3 u2 + d2 u3, T^2_2}, one entry per row j = 1..M-2.
inline std::vector<std::array<double, 2>> side_robin(const Field2D& u, const ModelParams& p,
                                                     const Grid& g, Side side) {
  if (!u.matches(g)) throw std::invalid_argument("side_robin: field/grid mismatch");
  const int i = side == Side::left ? 0 : g.N - 1;
  const LameParameters c = lame(p.foundation);
  std::vector<std::array<double, 2>> out;
  for (int j = 1; j < g.M - 1; ++j) out.push_back(side_stresses(FieldValues{&u}, p.surface, c, g, i, j, Diff::central));
  return out;
}

}  // namespace shellfound
