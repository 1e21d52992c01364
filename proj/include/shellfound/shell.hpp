#pragma once

// Linear shell bonded to the contact row x3 = 0 of the foundation.  On the
// surface chart x2 the first fundamental form is phi^2, the surface
// Christoffel symbol is phi'/phi and F = F_[II]2^2 = -ab/phi^3.  With v, w the
// trace of (u2, u3):
//
//   eps  = v' + (phi'/phi) v - F w
//   rho  = (w'' - (phi'/phi) w') / phi^2 - F^2 w + 2F (v' + (phi'/phi) v) + F' v
//
// and the governing equations on the open arc are
//
//   h Lam eps' + h^3 Lam / 3 (2F rho' + F' rho) - T^3_2 = 0
//   -h Lam F eps + h^3 Lam / 3 (Delta rho - F^2 rho) + T^3_3 = 0
//
// with Delta rho = phi^-1 (phi^-1 rho')'.  The fourth-order normal equation
// uses one ghost value of w beyond each end of the contact row.

#include <array>
#include <stdexcept>

#include "shellfound/foundation.hpp"
#include "shellfound/geometry.hpp"
#include "shellfound/grid.hpp"
#include "shellfound/material.hpp"

namespace shellfound {

/// Surface quantities of the contact curve at one angle.
struct ShellGeometry {
  double phi;
  double dphi;
  double gamma;   // phi'/phi
  double dgamma;  // (phi'/phi)'
  double F;       // F_[II]2^2
  double dF;
  double ddF;
};

inline ShellGeometry shell_geometry(const SurfaceFamily& s, double x2) {
  const VarphiJet p = varphi_jet(s, x2);
  const double ab = s.a() * s.b();
  const double f = p.value;
  const double f2 = f * f, f3 = f2 * f, f4 = f3 * f, f5 = f4 * f;
  ShellGeometry g;
  g.phi = f;
  g.dphi = p.d1;
  g.gamma = p.d1 / f;
  g.dgamma = p.d2 / f - g.gamma * g.gamma;
  g.F = -ab / f3;
  g.dF = 3.0 * ab * p.d1 / f4;
  g.ddF = 3.0 * ab * (p.d2 / f4 - 4.0 * p.d1 * p.d1 / f5);
  return g;
}

template <class T>
T eps22_of(const ShellGeometry& s, const T& v, const T& dv, const T& w) {
  return dv + s.gamma * v - s.F * w;
}

template <class T>
T rho22_of(const ShellGeometry& s, const T& v, const T& dv, const T& w, const T& dw, const T& ddw) {
  return (ddw - s.gamma * dw) / (s.phi * s.phi) - (s.F * s.F) * w + (2.0 * s.F) * (dv + s.gamma * v) +
         s.dF * v;
}

/// Derivative of eps along x2.
template <class T>
T deps22_of(const ShellGeometry& s, const T& v, const T& dv, const T& ddv, const T& w, const T& dw) {
  return ddv + s.dgamma * v + s.gamma * dv - s.dF * w - s.F * dw;
}

// ---------------------------------------------------------------------------
// Discrete contact-row operators.  The Access must provide ghost(0) and
// ghost(1), the values of w at i = -1 and i = N.

namespace detail {

template <class Access>
auto top_w(const Access& u, const Grid& g, int i) {
  if (i < 0) return u.ghost(0);
  if (i >= g.N) return u.ghost(1);
  return u.w(i, g.M - 1);
}

}  // namespace detail

/// Nodal eps at contact-row node i; v' is one-sided at the ends.
template <class Access>
auto nodal_eps(const Access& u, const SurfaceFamily& surf, const Grid& g, int i) {
  const int top = g.M - 1;
  const ShellGeometry s = shell_geometry(surf, g.x2(i));
  const auto dv = d_x2(u, 0, g, i, top, stencil::along_x2(g, i));
  return eps22_of(s, u.v(i, top), dv, u.w(i, top));
}

/// Nodal rho at contact-row node i; w derivatives are central (ghost values
/// enter at the ends), v' is one-sided at the ends.
template <class Access>
auto nodal_rho(const Access& u, const SurfaceFamily& surf, const Grid& g, int i) {
  const int top = g.M - 1;
  const ShellGeometry s = shell_geometry(surf, g.x2(i));
  const auto wm = detail::top_w(u, g, i - 1);
  const auto w0 = detail::top_w(u, g, i);
  const auto wp = detail::top_w(u, g, i + 1);
  const auto dw = (wp - wm) / (2.0 * g.dx2);
  const auto ddw = (wp - 2.0 * w0 + wm) / (g.dx2 * g.dx2);
  const auto dv = d_x2(u, 0, g, i, top, stencil::along_x2(g, i));
  return rho22_of(s, u.v(i, top), dv, w0, dw, ddw);
}

/// Foundation trace stresses {T^3_2, T^3_3} at contact-row node i, with a
/// three-point one-sided x3 derivative into the foundation.
template <class Access>
auto trace_stresses_at(const Access& u, const ModelParams& p, const Grid& g, int i) {
  return face_tractions(u, p.surface, lame(p.foundation), g, i, g.M - 1, Diff::backward);
}

/// {tangential, normal} shell equations at contact-row node 0 < i < N-1.
template <class Access>
auto shell_equations(const Access& u, const ModelParams& p, const Grid& g, int i) {
  using T = access_scalar_t<Access>;
  const int top = g.M - 1;
  const double h = p.h, Lam = lambda_plane(p.shell);
  const double bend = h * h * h * Lam / 3.0;
  const double d = g.dx2;
  const ShellGeometry s = shell_geometry(p.surface, g.x2(i));

  const T v = u.v(i, top), w = u.w(i, top);
  const T dv = (u.v(i + 1, top) - u.v(i - 1, top)) / (2.0 * d);
  const T ddv = (u.v(i + 1, top) - 2.0 * v + u.v(i - 1, top)) / (d * d);
  const T dw = (u.w(i + 1, top) - u.w(i - 1, top)) / (2.0 * d);

  const T eps = eps22_of(s, v, dv, w);
  const T deps = deps22_of(s, v, dv, ddv, w, dw);
  const T rm = nodal_rho(u, p.surface, g, i - 1);
  const T r0 = nodal_rho(u, p.surface, g, i);
  const T rp = nodal_rho(u, p.surface, g, i + 1);
  const T drho = (rp - rm) / (2.0 * d);

  // conservative phi^-1 (phi^-1 rho')'
  const double phi_lo = varphi(p.surface, g.x2(i) - 0.5 * d);
  const double phi_hi = varphi(p.surface, g.x2(i) + 0.5 * d);
  const T lap = ((rp - r0) / phi_hi - (r0 - rm) / phi_lo) / (s.phi * d * d);

  const auto tr = trace_stresses_at(u, p, g, i);
  const T tangential = (h * Lam) * deps + bend * ((2.0 * s.F) * drho + s.dF * r0) - tr[0];
  const T normal = (-h * Lam * s.F) * eps + bend * (lap - (s.F * s.F) * r0) + tr[1];
  return std::array<T, 2>{tangential, normal};
}

enum class End { min, max };

/// {traction, zero-pressure, zero-Neumann} at one end of the contact row.
template <class Access>
auto shell_end_equations(const Access& u, const ModelParams& p, const Grid& g, End end) {
  using T = access_scalar_t<Access>;
  const int top = g.M - 1;
  const int i = end == End::min ? 0 : g.N - 1;
  const Diff kind = end == End::min ? Diff::forward : Diff::backward;
  const int step = end == End::min ? 1 : -1;
  const double Lam = lambda_plane(p.shell);
  const double tau = end == End::min ? p.tau0 : p.tau_max;
  const ShellGeometry s = shell_geometry(p.surface, g.x2(i));

  const T eps = nodal_eps(u, p.surface, g, i);
  const T r0 = nodal_rho(u, p.surface, g, i);
  const T r1 = nodal_rho(u, p.surface, g, i + step);
  const T r2 = nodal_rho(u, p.surface, g, i + 2 * step);
  const auto rho_at = [&](int k) -> T { return k == 0 ? r0 : (k * step == 1 ? r1 : r2); };

  const T traction = Lam * eps + (2.0 / 3.0) * p.h * p.h * Lam * s.F * r0 - tau;
  const T pressure = stencil::first<T>([&](int k) { return rho_at(k); }, g.dx2, kind);
  const T neumann = d_x2(u, 1, g, i, top, kind);
  return std::array<T, 3>{traction, pressure, neumann};
}

// ---------------------------------------------------------------------------
// Public operators on a stored field; x2 is given as a contact-row index.

inline double eps22(const Field2D& u, const ModelParams& p, const Grid& g, int i) {
  return nodal_eps(FieldValues{&u}, p.surface, g, i);
}

inline double rho22(const Field2D& u, const ModelParams& p, const Grid& g, int i) {
  return nodal_rho(FieldValues{&u}, p.surface, g, i);
}

inline std::array<double, 2> trace_stresses(const Field2D& u, const ModelParams& p, const Grid& g,
                                            int i) {
  return trace_stresses_at(FieldValues{&u}, p, g, i);
}

inline std::array<double, 2> shell_residuals(const Field2D& u, const ModelParams& p, const Grid& g,
                                             int i) {
  if (i <= 0 || i >= g.N - 1) throw std::out_of_range("shell_residuals: end nodes have end conditions");
  return shell_equations(FieldValues{&u}, p, g, i);
}

inline std::array<double, 3> shell_end_conditions(const Field2D& u, const ModelParams& p,
                                                  const Grid& g, End end) {
  return shell_end_equations(FieldValues{&u}, p, g, end);
}

}  // namespace shellfound
