#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "shellfound/checkpoint.hpp"
#include "shellfound/solver.hpp"
#include "shellfound/verify.hpp"

using namespace shellfound;

namespace {

ModelParams defaults() { return params_from_deltas(default_deltas()); }

SolverConfig direct() {
  SolverConfig c;
  c.method = Method::direct;
  return c;
}

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

TEST(BuildGrid, FigureResolution) {
  const ModelParams p = defaults();
  const Grid g = build_grid(p, 250);
  EXPECT_DOUBLE_EQ(g.dx2, pi / 249);
  EXPECT_DOUBLE_EQ(g.psi0, 2.0);
  EXPECT_TRUE(g.satisfies_constraint());
  EXPECT_NEAR(g.x3(0), -1.0, 1e-15);
  EXPECT_NEAR(g.x3(g.M - 1), 0.0, 1e-14);
  EXPECT_NEAR(g.x2(0), -half_pi, 1e-15);
  EXPECT_NEAR(g.x2(g.N - 1), half_pi, 1e-14);
  // finest spacing that both divides L and respects psi0 dx2 <= dx3
  EXPECT_LT(1.0 / g.M, g.psi0 * g.dx2);
}

TEST(BuildGrid, ConstraintHoldsEverywhere) {
  for (double db : {0.875, 1.0, 1.125})
    for (double dh : {0.0625, 0.25, 0.5})
      for (int N : {33, 65, 126, 250, 401}) {
        const ModelParams p = params_from_deltas(8, 1, dh, db);
        EXPECT_TRUE(build_grid(p, N).satisfies_constraint()) << N;
        const Grid gl = build_layer_grid(p, N);
        EXPECT_NEAR(gl.x3(gl.M - 1), p.h, 1e-14);
        EXPECT_GE(gl.M, 3);
      }
}

TEST(BuildGrid, TooCoarseRejected) {
  EXPECT_THROW(build_grid(defaults(), 4), std::invalid_argument);
  // at N = 5 the depth L = 1 cannot hold two rows with psi0 dx2 <= dx3
  EXPECT_THROW(build_grid(defaults(), 5), std::invalid_argument);
}

TEST(JacobiSweep, FixedPointAtDiscreteSolution) {
  const ModelParams p = defaults();
  const Grid g = build_grid(p, 33);
  const ShellSolution s = solve(p, g, direct());
  const JacobiResult r = jacobi_sweep(s.field, p, g, 0.6);
  EXPECT_LE(r.max_update, 1e-14 * displacement_scale(p));
}

TEST(JacobiSweep, TractionsForceFirstUpdate) {
  const ModelParams p = defaults();
  const Grid g = build_grid(p, 33);
  const JacobiResult r = jacobi_sweep(Field2D(g), p, g, 0.6);
  EXPECT_GT(r.max_update, 0.0);
  for (int i = 0; i < g.N; ++i) {
    EXPECT_EQ(r.field.v(i, 0), 0.0);
    EXPECT_EQ(r.field.w(i, 0), 0.0);
  }
}

TEST(JacobiSweep, GridMismatchRejected) {
  const ModelParams p = defaults();
  EXPECT_THROW(jacobi_sweep(Field2D(10, 10), p, build_grid(p, 33), 0.6), std::invalid_argument);
}

TEST(Solve, JacobiConvergesOnDefaults) {
  const ModelParams p = defaults();
  const Grid g = build_grid(p, 33);
  SolverConfig c;
  const ShellSolution s = solve(p, g, c);
  EXPECT_TRUE(s.report.converged);
  EXPECT_LE(s.report.final_residual, c.tol);
  EXPECT_FALSE(s.report.residual_history.empty());
  EXPECT_EQ(s.report.residual_history.back(), s.report.final_residual);
  for (int i = 0; i < g.N; ++i) EXPECT_EQ(s.field.v(i, 0), 0.0);
}

TEST(Solve, JacobiMatchesDirect) {
  const CheckResult r = checks::jacobi_matches_direct(33);
  EXPECT_TRUE(r.pass) << r.detail;
}

TEST(Solve, SorMatchesDirect) {
  const ModelParams p = defaults();
  const Grid g = build_grid(p, 33);
  SolverConfig c;
  c.method = Method::sor;
  c.relax = 0.6;
  c.tol = 1e-13;
  const ShellSolution a = solve(p, g, c), b = solve(p, g, direct());
  ASSERT_TRUE(a.report.converged);
  EXPECT_LE(checks::max_rel_diff(a.field.u2, b.field.u2, 1.0), 1e-8);
}

// Plain Jacobi: the iteration matrix has an eigenvalue near -1.8 on this system.
TEST(Solve, UndampedJacobiDiverges) {
  const ModelParams p = defaults();
  SolverConfig c;
  c.relax = 1.0;
  EXPECT_THROW(solve(p, build_grid(p, 33), c), DivergenceError);
}

TEST(Solve, IterationCapReportsNonConvergence) {
  const ModelParams p = defaults();
  SolverConfig c;
  c.max_iter = 10;
  const ShellSolution s = solve(p, build_grid(p, 33), c);
  EXPECT_FALSE(s.report.converged);
  EXPECT_EQ(s.report.iterations, 10);
  EXPECT_GT(s.report.final_residual, c.tol);
}

TEST(Solve, ZeroTractionGivesZeroField) {
  ModelParams p = defaults();
  p.tau0 = p.tau_max = 0.0;
  for (Method m : {Method::jacobi, Method::direct}) {
    SolverConfig c;
    c.method = m;
    const ShellSolution s = solve(p, build_grid(p, 33), c);
    EXPECT_EQ(max_abs(s.field.u2), 0.0);
    EXPECT_EQ(max_abs(s.field.u3), 0.0);
  }
}

TEST(Solve, LinearInTractions) {
  ModelParams p = defaults();
  const Grid g = build_grid(p, 65);
  const ShellSolution one = solve(p, g, direct());
  p.tau0 = p.tau_max = 2.5;
  const ShellSolution c = solve(p, g, direct());
  EXPECT_LE(checks::max_rel_diff(c.field.u2, one.field.u2, 2.5), 1e-10);
  EXPECT_LE(checks::max_rel_diff(c.field.u3, one.field.u3, 2.5), 1e-10);
}

TEST(Solve, BitIdenticalAcrossWorkers) {
  const ModelParams p = defaults();
  const Grid g = build_grid(p, 33);
  SolverConfig c;
  c.max_iter = 3000;
  c.workers = 1;
  const ShellSolution a = solve(p, g, c);
  c.workers = 4;
  const ShellSolution b = solve(p, g, c);
  EXPECT_EQ(a.field.u2, b.field.u2);
  EXPECT_EQ(a.field.u3, b.field.u3);
  EXPECT_EQ(a.report.residual_history, b.report.residual_history);
}

TEST(Solve, ShellAssumptionEnforced) {
  ModelParams p = params_from_deltas(8, 1, 0.125, 1);
  p.h = 3.0;
  EXPECT_THROW(solve(p, build_grid(p, 33), direct()), std::domain_error);
}

// Max-norm change of the trace u2 between N and 2N - 1 (nested in x2) should
// shrink about fourfold per refinement.
TEST(Solve, GridConvergenceRatio) {
  const ModelParams p = defaults();
  std::vector<std::vector<double>> trace;
  for (int N : {65, 129, 257}) {
    const Grid g = build_grid(p, N);
    const ShellSolution s = solve(p, g, direct());
    std::vector<double> t;
    for (int i = 0; i < N; ++i) t.push_back(s.field.v(i, g.M - 1));
    trace.push_back(t);
  }
  auto diff = [&](int k) {
    double d = 0.0;
    for (std::size_t i = 0; i < trace[k].size(); ++i) d = std::max(d, std::abs(trace[k][i] - trace[k + 1][2 * i]));
    return d;
  };
  const double ratio = diff(0) / diff(1);
  EXPECT_GE(ratio, 3.0) << "ratio " << ratio;
  EXPECT_LE(ratio, 5.0) << "ratio " << ratio;
}

TEST(Energy, ZeroFieldZeroTraction) {
  ModelParams p = defaults();
  p.tau0 = p.tau_max = 0.0;
  const Grid g = build_grid(p, 33);
  EXPECT_EQ(discrete_energy(Field2D(g), p, g), 0.0);
}

TEST(Energy, ConvergedSolutionIsMinimum) {
  const CheckResult r = checks::energy_minimum(65, 50, 1e-6);
  EXPECT_TRUE(r.pass) << r.detail;
}

TEST(Energy, QuadraticInTractions) {
  ModelParams p = defaults();
  const Grid g = build_grid(p, 65);
  const double J1 = discrete_energy(solve(p, g, direct()).field, p, g);
  p.tau0 = p.tau_max = 2.0;
  const double J2 = discrete_energy(solve(p, g, direct()).field, p, g);
  EXPECT_NEAR(J2, 4.0 * J1, 1e-10 * std::abs(J2));
}

TEST(Energy, NonIncreasingNearConvergence) {
  const ModelParams p = defaults();
  const Grid g = build_grid(p, 33);
  SolverConfig c;
  const ShellSolution s = solve(p, g, c);
  ASSERT_TRUE(s.report.converged);
  const LinearSystem A = assemble_shell(p, g);
  std::vector<double> x = pack(s.field), next(x.size());
  double prev = discrete_energy(s.field, p, g);
  for (int it = 0; it < 100; ++it) {
    jacobi_step(A, x, next, c.relax, 1);
    x.swap(next);
    const double J = discrete_energy(unpack(x, g), p, g);
    EXPECT_LE(J, prev + 1e-12) << it;
    prev = J;
  }
}

TEST(Checkpoint, RoundTripIsExact) {
  const ModelParams p = defaults();
  const Grid g = build_grid(p, 33);
  const ShellSolution s = solve(p, g, direct());
  std::stringstream ss;
  write_checkpoint(ss, s.field, g);
  const Field2D back = read_checkpoint(ss, g);
  EXPECT_EQ(back.u2, s.field.u2);
  EXPECT_EQ(back.u3, s.field.u3);
  EXPECT_EQ(back.ghost_lo, s.field.ghost_lo);
  EXPECT_EQ(back.ghost_hi, s.field.ghost_hi);
}

TEST(Checkpoint, RestartFromConvergedFieldNeedsNoSweeps) {
  const ModelParams p = defaults();
  const Grid g = build_grid(p, 33);
  SolverConfig c;
  const ShellSolution s = solve(p, g, c);
  std::stringstream ss;
  write_checkpoint(ss, s.field, g);
  const Field2D init = read_checkpoint(ss, g);
  const ShellSolution again = solve(p, g, c, &init);
  EXPECT_TRUE(again.report.converged);
  EXPECT_EQ(again.report.iterations, 0);
}

TEST(Checkpoint, RejectsOtherGridAndGarbage) {
  const ModelParams p = defaults();
  const Grid g = build_grid(p, 33);
  std::stringstream ss;
  write_checkpoint(ss, Field2D(g), g);
  EXPECT_THROW(read_checkpoint(ss, build_grid(p, 65)), std::runtime_error);
  std::stringstream bad("shellfound-field 1\n33 6 zz 0x1p-2\n");
  EXPECT_THROW(read_checkpoint(bad, g), std::runtime_error);
  std::stringstream wrong("something else\n");
  EXPECT_THROW(read_checkpoint(wrong, g), std::runtime_error);
}

TEST(System, EveryUnknownOwnedOnce) {
  const ModelParams p = defaults();
  const Grid g = build_grid(p, 17);
  const LinearSystem A = assemble_shell(p, g);
  EXPECT_EQ(A.n, shell_unknown_count(g));
  for (int k = 0; k < A.n; ++k) EXPECT_NE(A.diag[static_cast<std::size_t>(k)], 0.0);
  SystemBuilder B(2);
  B.set(0, LinearForm::unknown(0), EqClass::interior);
  EXPECT_THROW(B.set(0, LinearForm::unknown(0), EqClass::interior), std::logic_error);
  EXPECT_THROW(B.finish(), std::logic_error);
}

TEST(Method, Parse) {
  EXPECT_EQ(parse_method("jacobi"), Method::jacobi);
  EXPECT_EQ(parse_method("sor"), Method::sor);
  EXPECT_EQ(parse_method("direct"), Method::direct);
  EXPECT_THROW(parse_method("multigrid"), std::invalid_argument);
}
