#pragma once

// Membrane-limit solution for the azimuthal displacement of a shell on a
// shear foundation of depth L.  Balancing membrane stretching against the
// foundation shear stiffness mu_f / L gives
//
//   h Lam ((phi w)' / phi)' = (mu_f / L) phi^2 w,   (phi w)'/phi = tau / Lam at the ends,
//
// solved by w(x2) = tau sinh(a alpha E(x2, e)) / (alpha Lam phi(x2) cosh(a alpha E(e)))
// with alpha = (mu_f / (h L Lam))^(1/2) and e^2 = 1 - (b/a)^2.

#include <cmath>
#include <stdexcept>

#include "shellfound/geometry.hpp"
#include "shellfound/material.hpp"

namespace shellfound {

struct AsymptoticScales {
  double alpha;
  double phi_scale;  // 2 a alpha E(e)
  double e2;
};

inline AsymptoticScales scales(const ModelParams& p) {
  const double mu = lame(p.foundation).mu;
  const double Lam = lambda_plane(p.shell);
  const double alpha = std::sqrt(mu / (p.h * p.L * Lam));
  const double e2 = p.surface.e2();
  return {alpha, 2.0 * p.surface.a() * alpha * ellip_E_complete(e2), e2};
}

/// Closed-form contravariant azimuthal displacement for equal end tractions.
inline double w2_closed(const ModelParams& p, double x2) {
  if (p.tau0 != p.tau_max)
    throw std::invalid_argument("w2_closed: the closed form assumes tau0 == tau_max");
  if (!(x2 >= -half_pi - 1e-12 && x2 <= half_pi + 1e-12))
    throw std::domain_error("w2_closed: x2 outside [-pi/2, pi/2]");
  const AsymptoticScales s = scales(p);
  const double a = p.surface.a();
  const double Lam = lambda_plane(p.shell);
  const double num = std::sinh(a * s.alpha * ellip_E(x2, s.e2));
  const double den = s.alpha * Lam * varphi(p.surface, x2) * std::cosh(a * s.alpha * ellip_E_complete(s.e2));
  return p.tau_max * num / den;
}

/// Ratios behind the membrane scaling regime; each should be of order one
/// (the first) or large (the other two) for the closed form to apply.
struct ScalingDiagnostics {
  double membrane_vs_shear;    // h Lam / (L^-1 mu_f meas^2), meas = 2 a E(e)
  double membrane_vs_bulk;     // h Lam / ((lambda_f + 2 mu_f) L)
  double curvature_vs_bulk;    // h Lam F^2 L / (lambda_f + 2 mu_f), F at the crown
  double phi_scale;
};

inline ScalingDiagnostics scaling_diagnostics(const ModelParams& p) {
  const LameParameters c = lame(p.foundation);
  const double Lam = lambda_plane(p.shell);
  const double meas = 2.0 * p.surface.a() * ellip_E_complete(p.surface.e2());
  const double F = curvatures(p.surface, 0.0).F_II_mixed;
  const double bulk = c.lambda + 2.0 * c.mu;
  return {p.h * Lam * p.L / (c.mu * meas * meas), p.h * Lam / (bulk * p.L), p.h * Lam * F * F * p.L / bulk,
          scales(p).phi_scale};
}

}  // namespace shellfound
