#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "shellfound/geometry.hpp"
#include "shellfound/oracles.hpp"

using namespace shellfound;

TEST(Varphi, CircleIsConstant) {
  const SurfaceFamily s(2, 2);
  for (double x : {-1.5, -0.3, 0.0, 0.7, 1.5}) EXPECT_DOUBLE_EQ(varphi(s, x), 2.0);
}

TEST(Varphi, EllipseEndpoints) {
  const SurfaceFamily s(2, 1);
  EXPECT_DOUBLE_EQ(varphi(s, 0.0), 2.0);
  EXPECT_NEAR(varphi(s, half_pi), 1.0, 1e-15);
}

TEST(Varphi, JetMatchesFiniteDifferences) {
  const SurfaceFamily s(2, 1.3);
  const double h = 1e-4;
  for (double x : {-1.2, -0.4, 0.3, 1.1}) {
    const VarphiJet j = varphi_jet(s, x);
    EXPECT_NEAR(j.d1, (varphi(s, x + h) - varphi(s, x - h)) / (2 * h), 1e-7);
    EXPECT_NEAR(j.d2, (varphi(s, x + h) - 2 * varphi(s, x) + varphi(s, x - h)) / (h * h), 1e-5);
  }
}

TEST(PsiBar2, Examples) {
  EXPECT_DOUBLE_EQ(psi_bar2(SurfaceFamily(2, 2), 0.0, 0.0), 2.0);
  EXPECT_DOUBLE_EQ(psi_bar2(SurfaceFamily(2, 2), pi / 4, -1.0), 1.0);
  EXPECT_DOUBLE_EQ(psi_bar2(SurfaceFamily(2, 1), 0.0, -1.0), 1.5);
}

TEST(PsiBar2, DegenerateChartThrows) {
  EXPECT_THROW(chart_metric(SurfaceFamily(2, 2), 0.0, -2.0), std::domain_error);
}

TEST(Curvatures, Examples) {
  const Curvatures c = curvatures(SurfaceFamily(2, 2), 0.0);
  EXPECT_DOUBLE_EQ(c.H, 0.25);
  EXPECT_EQ(c.K, 0.0);
  EXPECT_NEAR(curvatures(SurfaceFamily(2, 1), half_pi).H, 1.0, 1e-14);
}

TEST(Curvatures, SignConvention) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> ab(0.5, 4.0), x(-half_pi, half_pi);
  for (int k = 0; k < 200; ++k) {
    const SurfaceFamily s(ab(rng), ab(rng));
    const double t = x(rng);
    const Curvatures c = curvatures(s, t);
    const double phi = varphi(s, t);
    EXPECT_EQ(c.K, 0.0);
    EXPECT_GT(c.H, 0.0);
    EXPECT_DOUBLE_EQ(c.H, -0.5 * c.F_II_mixed);
    EXPECT_NEAR(c.H, 0.5 * s.a() * s.b() / (phi * phi * phi), 1e-14 * c.H);
  }
}

TEST(Geometry, EvenInX2) {
  const SurfaceFamily s(2, 1.4);
  for (double t : {0.1, 0.6, 1.2, half_pi}) {
    EXPECT_DOUBLE_EQ(varphi(s, t), varphi(s, -t));
    EXPECT_DOUBLE_EQ(psi_bar2(s, t, -0.3), psi_bar2(s, -t, -0.3));
    EXPECT_DOUBLE_EQ(curvatures(s, t).H, curvatures(s, -t).H);
  }
}

TEST(Christoffel, CircleExamples) {
  const SurfaceFamily s(2, 2);
  EXPECT_EQ(christoffel(s, 0.0, 0.0).g2_22, 0.0);
  for (double t : {-1.0, 0.0, 0.5, 1.4}) EXPECT_DOUBLE_EQ(christoffel(s, t, 0.0).g2_23, 0.5);
}

TEST(Christoffel, EllipseAgainstEmbedding) {
  const SurfaceFamily s(2, 1);
  const ChristoffelSet G = christoffel(s, pi / 4, -0.5);
  const auto ref = oracle::christoffel_fd(s, {0.0, pi / 4, -0.5});
  for (int k = 1; k <= 3; ++k)
    for (int i = 1; i <= 3; ++i)
      for (int j = 1; j <= 3; ++j) EXPECT_NEAR(G(k, i, j), ref[k - 1][i - 1][j - 1], 1e-6) << k << i << j;
}

TEST(Christoffel, SymmetricLowerIndices) {
  const ChristoffelSet G = christoffel(SurfaceFamily(2, 1.5), 0.4, -0.2);
  for (int k = 1; k <= 3; ++k)
    for (int i = 1; i <= 3; ++i)
      for (int j = 1; j <= 3; ++j) EXPECT_EQ(G(k, i, j), G(k, j, i));
}

// 100 random points, symbols against second differences of the embedding.
TEST(Christoffel, RandomPointsAgainstEmbedding) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> ab(1.0, 3.0), x2(-1.5, 1.5), x3(-0.4, 0.2);
  double worst = 0.0;
  for (int n = 0; n < 100; ++n) {
    const SurfaceFamily s(ab(rng), ab(rng));
    const double t = x2(rng), z = x3(rng);
    const ChristoffelSet G = christoffel(s, t, z);
    const auto ref = oracle::christoffel_fd(s, {0.0, t, z});
    for (int k = 1; k <= 3; ++k)
      for (int i = 1; i <= 3; ++i)
        for (int j = 1; j <= 3; ++j) worst = std::max(worst, std::abs(G(k, i, j) - ref[k - 1][i - 1][j - 1]));
  }
  EXPECT_LE(worst, 1e-6);
}

TEST(Metric, EmbeddingIsOrthogonal) {
  std::mt19937_64 rng(22);
  std::uniform_real_distribution<double> ab(1.0, 3.0), x2(-1.5, 1.5), x3(-0.5, 0.3);
  for (int n = 0; n < 100; ++n) {
    const SurfaceFamily s(ab(rng), ab(rng));
    const double t = x2(rng), z = x3(rng);
    const auto g = oracle::metric_fd(s, {0.0, t, z});
    const double psi = psi_bar2(s, t, z);
    EXPECT_NEAR(g[1][2], 0.0, 1e-8);
    EXPECT_NEAR(g[2][2], 1.0, 1e-8);
    EXPECT_NEAR(g[1][1], psi * psi, 1e-8 * psi * psi);
  }
}

TEST(EllipE, Examples) {
  EXPECT_NEAR(ellip_E(half_pi, 0.0), half_pi, 1e-14);
  EXPECT_EQ(ellip_E(0.0, 0.3), 0.0);
  EXPECT_EQ(ellip_E(0.0, -2.0), 0.0);
  EXPECT_NEAR(ellip_E(half_pi, 1.0), 1.0, 1e-12);
}

TEST(EllipE, PastIntegrandZeroThrows) {
  EXPECT_THROW(ellip_E(half_pi, 2.0), std::domain_error);
  EXPECT_NO_THROW(ellip_E(0.5, 2.0));
}

TEST(EllipE, OddAndMonotone) {
  for (double e2 : {-0.8, 0.0, 0.5, 0.99}) {
    double prev = -1e300;
    for (int k = 0; k <= 40; ++k) {
      const double x = -half_pi + pi * k / 40;
      const double E = ellip_E(x, e2);
      EXPECT_DOUBLE_EQ(E, -ellip_E(-x, e2));
      EXPECT_GT(E, prev);
      prev = E;
    }
  }
}

TEST(EllipE, RandomAgainstReference) {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> x(0.0, half_pi), e(-1.5, 1.0);
  for (int n = 0; n < 50; ++n) {
    const double t = x(rng), e2 = e(rng);
    EXPECT_NEAR(ellip_E(t, e2), oracle::ellip_E_reference(t, e2), 1e-10) << t << ' ' << e2;
  }
}

TEST(ShellAssumption, Examples) {
  const ShellAssumptionReport ok = validate_shell_assumption(SurfaceFamily(2, 2), 0.25);
  EXPECT_NEAR(ok.max_hH, 0.0625, 1e-15);
  EXPECT_EQ(ok.status, AssumptionStatus::pass);
  const ShellAssumptionReport thick = validate_shell_assumption(SurfaceFamily(2, 2), 4.0);
  EXPECT_NEAR(thick.max_hH, 1.0, 1e-14);
  EXPECT_NE(thick.status, AssumptionStatus::pass);
  EXPECT_EQ(validate_shell_assumption(SurfaceFamily(2, 2), 0.5).status, AssumptionStatus::warn);
  EXPECT_THROW(require_shell_assumption(SurfaceFamily(2, 2), 4.0), std::domain_error);
  EXPECT_THROW(validate_shell_assumption(SurfaceFamily(2, 2), 0.0), std::invalid_argument);
}

TEST(ShellAssumption, GaussianTermVanishes) {
  for (double b : {0.5, 1.0, 2.0, 3.0}) EXPECT_EQ(validate_shell_assumption(SurfaceFamily(2, b), 0.1).max_h2K, 0.0);
}

TEST(SurfaceFamily, RejectsBadRadii) {
  EXPECT_THROW(SurfaceFamily(0, 1), std::invalid_argument);
  EXPECT_THROW(SurfaceFamily(1, -1), std::invalid_argument);
  EXPECT_THROW(SurfaceFamily(1, NAN), std::invalid_argument);
}
