#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

#include "shellfound/geometry.hpp"

namespace shellfound {

struct IsotropicMaterial {
  double E;
  double nu;

  IsotropicMaterial(double young, double poisson) : E(young), nu(poisson) {
    if (!(E > 0.0) || !std::isfinite(E))
      throw std::invalid_argument("IsotropicMaterial: Young's modulus must be positive");
    if (!(nu > -1.0 && nu < 0.5))
      throw std::invalid_argument("IsotropicMaterial: Poisson's ratio must lie in (-1, 1/2), got " +
                                  std::to_string(nu));
  }
};

struct LameParameters {
  double lambda;
  double mu;
};

inline LameParameters lame(const IsotropicMaterial& m) {
  return {m.nu * m.E / ((1.0 + m.nu) * (1.0 - 2.0 * m.nu)), 0.5 * m.E / (1.0 + m.nu)};
}

/// Membrane modulus 4 mu (lambda + mu) / (lambda + 2 mu) = E / (1 - nu^2).
inline double lambda_plane(const IsotropicMaterial& m) {
  return m.E / ((1.0 + m.nu) * (1.0 - m.nu));
}

/// Fixed baseline of every experiment.
namespace baseline {
inline constexpr double a = 2.0;
inline constexpr double L = 1.0;
inline constexpr double E = 1.0e3;
inline constexpr double nu = 0.25;
inline constexpr double tau0 = 1.0;
inline constexpr double tau_max = 1.0;
}  // namespace baseline

struct ModelParams {
  SurfaceFamily surface;
  double L;
  double h;
  IsotropicMaterial foundation;
  IsotropicMaterial shell;
  double tau0;
  double tau_max;
};

/// Dimensionless ratios relative to the baseline: dE = E/E_f, dnu = nu/nu_f,
/// dh = h/L, db = b/a.
struct Deltas {
  double dE = 8.0;
  double dnu = 1.0;
  double dh = 0.125;
  double db = 1.0;
};

inline ModelParams params_from_deltas(double dE, double dnu, double dh, double db) {
  if (!(dE > 0.0)) throw std::invalid_argument("params_from_deltas: dE must be positive");
  if (!(dh > 0.0)) throw std::invalid_argument("params_from_deltas: dh must be positive");
  if (!(db > 0.0)) throw std::invalid_argument("params_from_deltas: db must be positive");
  const double nu = dnu * baseline::nu;
  if (!(nu > -1.0 && nu < 0.5))
    throw std::invalid_argument("params_from_deltas: dnu gives invalid Poisson's ratio " +
                                std::to_string(nu));
  return ModelParams{SurfaceFamily(baseline::a, db * baseline::a),
                     baseline::L,
                     dh * baseline::L,
                     IsotropicMaterial(baseline::E, baseline::nu),
                     IsotropicMaterial(dE * baseline::E, nu),
                     baseline::tau0,
                     baseline::tau_max};
}

inline ModelParams params_from_deltas(const Deltas& d) {
  return params_from_deltas(d.dE, d.dnu, d.dh, d.db);
}

inline Deltas deltas_of(const ModelParams& p) {
  return {p.shell.E / p.foundation.E, p.shell.nu / p.foundation.nu, p.h / p.L,
          p.surface.b() / p.surface.a()};
}

/// Sweep defaults: db = 1, dh = 1/8, dE = 8, dnu = 1.
inline Deltas default_deltas() { return {}; }

/// Configuration of the displacement-trace figures: b = 2, h = 1/4, E = 6000, nu = 1/4.
inline Deltas figure_deltas() { return {6.0, 1.0, 0.25, 1.0}; }

}  // namespace shellfound
