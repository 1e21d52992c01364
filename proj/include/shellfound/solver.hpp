#pragma once

#include <algorithm>
#include <chrono>
#include <limits>
#include <cmath>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Sparse>
#include <Eigen/SparseLU>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "shellfound/foundation.hpp"
#include "shellfound/grid.hpp"
#include "shellfound/shell.hpp"
#include "shellfound/system.hpp"

namespace shellfound {

enum class Method { jacobi, sor, direct };

inline Method parse_method(const std::string& s) {
  if (s == "jacobi") return Method::jacobi;
  if (s == "sor") return Method::sor;
  if (s == "direct") return Method::direct;
  throw std::invalid_argument("unknown solver method '" + s + "'");
}

inline const char* method_name(Method m) {
  switch (m) {
    case Method::jacobi: return "jacobi";
    case Method::sor: return "sor";
    default: return "direct";
  }
}

struct SolverConfig {
  Method method = Method::jacobi;
  double tol = 1e-8;
  long max_iter = 5'000'000;
  double relax = 0.6;     // Jacobi under-relaxation / SOR factor; Jacobi diverges above ~0.7
  int workers = 1;
  int check_every = 50;
};

struct SolveReport {
  long iterations = 0;
  std::vector<double> residual_history;
  bool converged = false;
  double final_residual = 0.0;
  double runtime = 0.0;
  Method method = Method::jacobi;
  std::vector<double> class_residual;  // max scaled residual per EqClass
};

class DivergenceError : public std::runtime_error {
public:
  DivergenceError(long iteration, const std::string& what)
      : std::runtime_error(what + " at iteration " + std::to_string(iteration)), iteration_(iteration) {}
  long iteration() const { return iteration_; }

private:
  long iteration_;
};

// ---------------------------------------------------------------------------
// Generic iterations on an assembled system.  The convergence measure is the
// largest diagonally scaled residual |r_k / a_kk| divided by a displacement
// scale, i.e. the size of the Jacobi correction relative to the expected
// displacement magnitude.

inline double scaled_residual(const LinearSystem& A, std::span<const double> x, double scale,
                              std::vector<double>* per_class = nullptr) {
  double worst = 0.0;
  if (per_class) per_class->assign(static_cast<std::size_t>(EqClass::count_), 0.0);
  for (int k = 0; k < A.n; ++k) {
    const double r = std::abs(A.residual(k, x) / A.diag[k]) / scale;
    if (!(r <= worst)) worst = r;  // propagates NaN
    if (per_class) {
      double& c = (*per_class)[static_cast<std::size_t>(A.cls[k])];
      c = std::max(c, r);
    }
  }
  return worst;
}

/// One double-buffered Jacobi sweep; returns the max-norm of the update.
inline double jacobi_step(const LinearSystem& A, std::span<const double> x, std::span<double> next,
                          double relax, int workers) {
  double max_update = 0.0;
  int bad = 0;
#pragma omp parallel for schedule(static) num_threads(std::max(1, workers)) \
    reduction(max : max_update) reduction(| : bad)
  for (int k = 0; k < A.n; ++k) {
    const double r = A.row_dot(k, x) - A.rhs[k];
    const double du = -relax * r / A.diag[k];
    next[static_cast<std::size_t>(k)] = x[static_cast<std::size_t>(k)] + du;
    max_update = std::max(max_update, std::abs(du));
    bad |= std::isfinite(du) ? 0 : 1;
  }
  return bad ? std::numeric_limits<double>::quiet_NaN() : max_update;
}

/// One in-place SOR sweep in natural ordering.
inline double sor_step(const LinearSystem& A, std::span<double> x, double omega) {
  double max_update = 0.0;
  for (int k = 0; k < A.n; ++k) {
    const double r = A.row_dot(k, x) - A.rhs[k];
    const double du = -omega * r / A.diag[k];
    x[static_cast<std::size_t>(k)] += du;
    if (!(std::abs(du) <= max_update)) max_update = std::abs(du);
  }
  return max_update;
}

inline std::vector<double> direct_solve(const LinearSystem& A) {
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(A.val.size());
  Eigen::VectorXd b(A.n);
  for (int k = 0; k < A.n; ++k) {
    const double s = 1.0 / A.diag[k];
    for (int q = A.row_ptr[k]; q < A.row_ptr[k + 1]; ++q) trip.emplace_back(k, A.col[q], A.val[q] * s);
    b[k] = A.rhs[k] * s;
  }
  Eigen::SparseMatrix<double> M(A.n, A.n);
  M.setFromTriplets(trip.begin(), trip.end());
  M.makeCompressed();
  Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> lu;
  lu.compute(M);
  if (lu.info() != Eigen::Success) throw std::runtime_error("direct solve: factorization failed");
  Eigen::VectorXd x = lu.solve(b);
  if (lu.info() != Eigen::Success) throw std::runtime_error("direct solve: back substitution failed");
  std::vector<double> out(static_cast<std::size_t>(A.n));
  for (int k = 0; k < A.n; ++k) out[static_cast<std::size_t>(k)] = x[k];
  return out;
}

inline SolveReport solve_system(const LinearSystem& A, std::vector<double>& x, const SolverConfig& cfg,
                                 double scale) {
  if (static_cast<int>(x.size()) != A.n) x.assign(static_cast<std::size_t>(A.n), 0.0);
  if (!(scale > 0.0)) scale = 1.0;
  SolveReport rep;
  rep.method = cfg.method;
  const auto t0 = std::chrono::steady_clock::now();

  auto check = [&](long it) {
    const double r = scaled_residual(A, x, scale);
    if (!std::isfinite(r)) throw DivergenceError(it, "non-finite residual");
    rep.residual_history.push_back(r);
    return r;
  };

  if (cfg.method == Method::direct) {
    x = direct_solve(A);
    rep.iterations = 1;
    rep.final_residual = check(1);
    rep.converged = rep.final_residual <= cfg.tol;
  } else {
    std::vector<double> next(x.size());
    const int every = std::max(1, cfg.check_every);
    double r = check(0);
    long it = 0;
    while (r > cfg.tol && it < cfg.max_iter) {
      double upd = 0.0;
      if (cfg.method == Method::jacobi) {
        upd = jacobi_step(A, x, next, cfg.relax, cfg.workers);
        x.swap(next);
      } else {
        upd = sor_step(A, x, cfg.relax);
      }
      ++it;
      if (!std::isfinite(upd)) throw DivergenceError(it, "non-finite update");
      if (it % every == 0 || it == cfg.max_iter) r = check(it);
    }
    rep.iterations = it;
    rep.final_residual = r;
    rep.converged = r <= cfg.tol;
  }
  scaled_residual(A, x, scale, &rep.class_residual);
  rep.runtime = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

// ---------------------------------------------------------------------------
// Bonded-shell model: foundation nodes plus the two ghost values of w.

struct FoundationNodes {
  int N;
  int operator()(int i, int j) const { return i + N * j; }
};

inline int shell_unknown_count(const Grid& g) { return 2 * g.N * g.M + 2; }

inline UnknownAccess<FoundationNodes> shell_unknowns(const Grid& g) {
  return {FoundationNodes{g.N}, 2 * g.N * g.M};
}

/// Displacement scale tau L / mu_f used to normalise residuals.
inline double displacement_scale(const ModelParams& p) {
  const double tau = std::max(std::abs(p.tau0), std::abs(p.tau_max));
  return (tau > 0.0 ? tau : 1.0) * p.L / lame(p.foundation).mu;
}

inline LinearSystem assemble_shell(const ModelParams& p, const Grid& g) {
  if (g.M < 3) throw std::invalid_argument("assemble_shell: need at least three rows");
  const auto U = shell_unknowns(g);
  const LameParameters c = lame(p.foundation);
  SystemBuilder B(shell_unknown_count(g));
  const int top = g.M - 1;
  auto iv = [&](int i, int j) { return 2 * (i + g.N * j); };

  for (int j = 0; j < g.M; ++j) {
    for (int i = 0; i < g.N; ++i) {
      const int k = iv(i, j);
      if (j == 0) {
        B.set(k, U.v(i, j), EqClass::dirichlet);
        B.set(k + 1, U.w(i, j), EqClass::dirichlet);
      } else if (j < top) {
        if (i == 0 || i == g.N - 1) {
          auto s = side_stresses(U, p.surface, c, g, i, j, Diff::central);
          B.set(k, std::move(s[1]), EqClass::side);
          B.set(k + 1, std::move(s[0]), EqClass::side);
        } else {
          auto r = navier_at(U, p.surface, c, g, i, j);
          B.set(k, std::move(r[0]), EqClass::interior);
          B.set(k + 1, std::move(r[1]), EqClass::interior);
        }
      } else if (i == 0 || i == g.N - 1) {
        const End e = i == 0 ? End::min : End::max;
        auto r = shell_end_equations(U, p, g, e);
        B.set(k, std::move(r[0]), EqClass::shell_end);
        B.set(k + 1, std::move(r[2]), EqClass::shell_end);
        B.set(U.ghost_base + (i == 0 ? 0 : 1), std::move(r[1]), EqClass::ghost);
      } else {
        auto r = shell_equations(U, p, g, i);
        B.set(k, std::move(r[0]), EqClass::shell);
        B.set(k + 1, std::move(r[1]), EqClass::shell);
      }
    }
  }
  return B.finish();
}

inline std::vector<double> pack(const Field2D& u) {
  std::vector<double> x(static_cast<std::size_t>(2 * u.N * u.M + 2));
  for (std::size_t n = 0; n < u.u2.size(); ++n) {
    x[2 * n] = u.u2[n];
    x[2 * n + 1] = u.u3[n];
  }
  x[x.size() - 2] = u.ghost_lo;
  x[x.size() - 1] = u.ghost_hi;
  return x;
}

inline Field2D unpack(std::span<const double> x, const Grid& g) {
  Field2D u(g);
  for (std::size_t n = 0; n < u.u2.size(); ++n) {
    u.u2[n] = x[2 * n];
    u.u3[n] = x[2 * n + 1];
  }
  u.ghost_lo = x[x.size() - 2];
  u.ghost_hi = x[x.size() - 1];
  return u;
}

struct JacobiResult {
  Field2D field;
  double max_update;
};

/// One double-buffered, under-relaxed Jacobi sweep of the bonded-shell system.
inline JacobiResult jacobi_sweep(const Field2D& u, const ModelParams& p, const Grid& g, double relax,
                                 int workers = 1) {
  if (!u.matches(g)) throw std::invalid_argument("jacobi_sweep: field/grid mismatch");
  const LinearSystem A = assemble_shell(p, g);
  const std::vector<double> x = pack(u);
  std::vector<double> next(x.size());
  const double upd = jacobi_step(A, x, next, relax, workers);
  if (!std::isfinite(upd)) throw DivergenceError(1, "jacobi_sweep: non-finite update");
  JacobiResult out{unpack(next, g), upd};
  for (int i = 0; i < g.N; ++i) out.field.v(i, 0) = out.field.w(i, 0) = 0.0;
  return out;
}

struct ShellSolution {
  Field2D field;
  SolveReport report;
};

inline ShellSolution solve(const ModelParams& p, const Grid& g, const SolverConfig& cfg,
                           const Field2D* initial = nullptr) {
  require_shell_assumption(p.surface, p.h);
  const LinearSystem A = assemble_shell(p, g);
  std::vector<double> x = initial ? pack(*initial) : std::vector<double>(static_cast<std::size_t>(A.n), 0.0);
  if (initial && !initial->matches(g)) throw std::invalid_argument("solve: initial field/grid mismatch");
  SolveReport rep = solve_system(A, x, cfg, displacement_scale(p));
  return {unpack(x, g), std::move(rep)};
}

// ---------------------------------------------------------------------------
// Energy functional of the bonded system on a discrete field.

namespace detail {

inline double trapezoid_weight(int k, int n) { return (k == 0 || k == n - 1) ? 0.5 : 1.0; }

inline Diff along_x3(const Grid& g, int j) {
  return j == 0 ? Diff::forward : (j == g.M - 1 ? Diff::backward : Diff::central);
}

}  // namespace detail

/// Foundation strain energy (trapezoidal, volume element psi dx2 dx3).
template <class Access>
double foundation_energy(const Access& u, const SurfaceFamily& s, const LameParameters& c,
                         const Grid& g) {
  double total = 0.0;
  for (int j = 0; j < g.M; ++j) {
    for (int i = 0; i < g.N; ++i) {
      const ChartMetric m = chart_metric(s, g.x2(i), g.x3(j));
      const Diff k2 = stencil::along_x2(g, i), k3 = detail::along_x3(g, j);
      const double v = u.v(i, j), w = u.w(i, j);
      const double v2 = d_x2(u, 0, g, i, j, k2), w2 = d_x2(u, 1, g, i, j, k2);
      const double v3 = d_x3(u, 0, g, i, j, k3), w3 = d_x3(u, 1, g, i, j, k3);
      const double e22 = mixed_strain22(m, v, v2, w);
      const double S = shear_form(m, v3, w2);
      const double density = 0.5 * (stress22(m, c, v, v2, w, w3) * e22 +
                                    stress33(m, c, v, v2, w, w3) * w3 + c.mu * S * S / (m.psi * m.psi));
      total += density * m.psi * detail::trapezoid_weight(i, g.N) * detail::trapezoid_weight(j, g.M);
    }
  }
  return total * g.dx2 * g.dx3;
}

inline double discrete_energy(const Field2D& u, const ModelParams& p, const Grid& g) {
  if (!u.matches(g)) throw std::invalid_argument("discrete_energy: field/grid mismatch");
  const FieldValues U{&u};
  const double Lam = lambda_plane(p.shell);
  double shell = 0.0;
  for (int i = 0; i < g.N; ++i) {
    const double eps = nodal_eps(U, p.surface, g, i);
    const double rho = nodal_rho(U, p.surface, g, i);
    const double phi = varphi(p.surface, g.x2(i));
    shell += (0.5 * p.h * Lam * eps * eps + p.h * p.h * p.h * Lam * rho * rho / 6.0) * phi *
             detail::trapezoid_weight(i, g.N);
  }
  shell *= g.dx2;
  const int top = g.M - 1;
  const double work = p.h * (p.tau_max * varphi(p.surface, half_pi) * u.v(g.N - 1, top) -
                             p.tau0 * varphi(p.surface, -half_pi) * u.v(0, top));
  return foundation_energy(U, p.surface, lame(p.foundation), g) + shell - work;
}

}  // namespace shellfound
