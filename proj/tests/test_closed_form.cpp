#include <gtest/gtest.h>

#include <cmath>

#include "shellfound/closed_form.hpp"
#include "shellfound/oracles.hpp"
#include "shellfound/verify.hpp"

using namespace shellfound;

TEST(Scales, CircleHasNoEccentricity) {
  const ModelParams p = params_from_deltas(default_deltas());
  const AsymptoticScales s = scales(p);
  EXPECT_EQ(s.e2, 0.0);
  // E(pi/2, 0) = pi/2, so phi_scale = pi a alpha
  EXPECT_NEAR(s.phi_scale, pi * p.surface.a() * s.alpha, 1e-12);
}

TEST(Scales, DefaultAlpha) {
  const ModelParams p = params_from_deltas(default_deltas());
  // mu_f = 400, Lam = 8000 / (1 - 1/16), h = 1/8, L = 1
  EXPECT_NEAR(scales(p).alpha, std::sqrt(400.0 / (0.125 * 8000.0 / 0.9375)), 1e-14);
}

TEST(W2Closed, VanishesAtCrownAndIsOdd) {
  const ModelParams p = params_from_deltas(Deltas{8.0, 1.0, 0.125, 0.9});
  EXPECT_EQ(w2_closed(p, 0.0), 0.0);
  for (double x : {0.1, 0.7, 1.3, half_pi}) EXPECT_NEAR(w2_closed(p, -x), -w2_closed(p, x), 1e-18);
  EXPECT_GT(w2_closed(p, half_pi), 0.0);
}

TEST(W2Closed, LinearInTraction) {
  ModelParams p = params_from_deltas(default_deltas());
  const double w1 = w2_closed(p, 1.1);
  p.tau0 = p.tau_max = 2.5;
  EXPECT_NEAR(w2_closed(p, 1.1), 2.5 * w1, 1e-15);
}

TEST(W2Closed, RejectsUnequalTractions) {
  ModelParams p = params_from_deltas(default_deltas());
  p.tau0 = 0.5;
  EXPECT_THROW(w2_closed(p, 0.2), std::invalid_argument);
}

TEST(W2Closed, RejectsOutsideRange) {
  const ModelParams p = params_from_deltas(default_deltas());
  EXPECT_THROW(w2_closed(p, 2.0), std::domain_error);
}

// End condition (phi w)'/phi = tau / Lam, checked by a one-sided difference.
TEST(W2Closed, SatisfiesEndTraction) {
  const ModelParams p = params_from_deltas(Deltas{8.0, 1.0, 0.125, 0.9});
  const double d = 1e-4, x = half_pi;
  auto W = [&](double t) { return varphi(p.surface, t) * w2_closed(p, t); };
  const double flux = (3 * W(x) - 4 * W(x - d) + W(x - 2 * d)) / (2 * d) / varphi(p.surface, x);
  EXPECT_NEAR(flux, p.tau_max / lambda_plane(p.shell), 1e-6 * p.tau_max / lambda_plane(p.shell));
}

TEST(W2Closed, SolvesMembraneEquationAtOrderTwo) {
  const ModelParams p = params_from_deltas(Deltas{8.0, 1.0, 0.125, 0.9});
  const double r1 = checks::closed_form_ode_residual(p, 0.04), r2 = checks::closed_form_ode_residual(p, 0.02),
               r3 = checks::closed_form_ode_residual(p, 0.01);
  EXPECT_NEAR(std::log2(r1 / r2), 2.0, 0.2);
  EXPECT_NEAR(std::log2(r2 / r3), 2.0, 0.2);
}

TEST(W2Closed, MatchesBoundaryValueOracle) {
  for (double db : {0.9, 1.0, 1.1}) {
    const ModelParams p = params_from_deltas(Deltas{8.0, 1.0, 0.125, db});
    const int n = 20001;
    const auto w = oracle::membrane_bvp(p, n);
    double d = 0.0, s = 0.0;
    for (int k = 0; k < n; k += 40) {
      d = std::max(d, std::abs(w[k] - w2_closed(p, -half_pi + pi * k / (n - 1))));
      s = std::max(s, std::abs(w[k]));
    }
    EXPECT_LE(d / s, 1e-6) << db;
  }
}

TEST(ScalingDiagnostics, DefaultsArePositive) {
  const ModelParams p = params_from_deltas(default_deltas());
  const ScalingDiagnostics d = scaling_diagnostics(p);
  EXPECT_GT(d.membrane_vs_shear, 0.0);
  EXPECT_GT(d.membrane_vs_bulk, 0.0);
  EXPECT_GT(d.curvature_vs_bulk, 0.0);
  EXPECT_DOUBLE_EQ(d.phi_scale, scales(p).phi_scale);
}

TEST(Scales, ProlateSectionHasNegativeE2) {
  const ModelParams p = params_from_deltas(Deltas{8.0, 1.0, 0.125, 1.1});
  EXPECT_LT(scales(p).e2, 0.0);
  EXPECT_TRUE(std::isfinite(w2_closed(p, 1.0)));
}
