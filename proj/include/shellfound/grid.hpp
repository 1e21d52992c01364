#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "shellfound/geometry.hpp"
#include "shellfound/material.hpp"

namespace shellfound {

/// Where psi0 of the grid constraint psi0 * dx2 <= dx3 is sampled.
enum class Psi0Rule {
  contact,    // psi(pi/4, 0): bonded-shell model and the foundation of both models
  layer_top,  // psi(pi/4, h): overlying layer of the two-body model
};

/// Uniform structured grid on [-pi/2, pi/2] x [x3_min, x3_min + (M-1) dx3].
/// Row j = 0 is the bottom row.
struct Grid {
  int N = 0;
  int M = 0;
  double dx2 = 0.0;
  double dx3 = 0.0;
  double psi0 = 0.0;
  double x3_min = 0.0;

  double x2(int i) const { return -half_pi + i * dx2; }
  double x3(int j) const { return x3_min + j * dx3; }
  double x3_max() const { return x3_min + (M - 1) * dx3; }
  std::size_t size() const { return static_cast<std::size_t>(N) * static_cast<std::size_t>(M); }
  int index(int i, int j) const { return i + N * j; }
  bool satisfies_constraint() const { return psi0 * dx2 <= dx3 * (1.0 + 1e-12); }
};

namespace detail {

inline int intervals_for(double extent, double min_step) {
  // largest count whose step still respects the lower bound min_step
  const double ratio = extent / min_step;
  int n = static_cast<int>(std::floor(ratio * (1.0 + 1e-12)));
  return n;
}

}  // namespace detail

/// Foundation grid over [-L, 0]: dx2 = pi/(N-1), dx3 the smallest spacing
/// >= psi0 dx2 that divides L evenly.
inline Grid build_grid(const ModelParams& p, int N, Psi0Rule rule = Psi0Rule::contact) {
  if (N < 5) throw std::invalid_argument("build_grid: need N >= 5 for the fourth-order shell stencil");
  Grid g;
  g.N = N;
  g.dx2 = pi / (N - 1);
  g.psi0 = psi_bar2(p.surface, 0.25 * pi, rule == Psi0Rule::contact ? 0.0 : p.h);
  const int intervals = detail::intervals_for(p.L, g.psi0 * g.dx2);
  if (intervals < 2)
    throw std::invalid_argument("build_grid: foundation depth holds fewer than two rows at this N");
  g.M = intervals + 1;
  g.dx3 = p.L / intervals;
  g.x3_min = -p.L;
  return g;
}

/// Layer grid over [0, h] with psi0 = psi(pi/4, h).  At least two intervals
/// are used even if the layer is too thin for the constraint at this N.
inline Grid build_layer_grid(const ModelParams& p, int N) {
  if (N < 5) throw std::invalid_argument("build_layer_grid: need N >= 5");
  Grid g;
  g.N = N;
  g.dx2 = pi / (N - 1);
  g.psi0 = psi_bar2(p.surface, 0.25 * pi, p.h);
  const int intervals = std::max(2, detail::intervals_for(p.h, g.psi0 * g.dx2));
  g.M = intervals + 1;
  g.dx3 = p.h / intervals;
  g.x3_min = 0.0;
  return g;
}

/// Displacement components (u2 contravariant, u3 normal) on a grid.  The
/// bonded-shell model also carries one ghost value of u3 beyond each end of
/// the contact row.
struct Field2D {
  int N = 0;
  int M = 0;
  std::vector<double> u2;
  std::vector<double> u3;
  double ghost_lo = 0.0;
  double ghost_hi = 0.0;

  Field2D() = default;
  Field2D(int n, int m)
      : N(n), M(m), u2(static_cast<std::size_t>(n) * m, 0.0), u3(static_cast<std::size_t>(n) * m, 0.0) {}
  explicit Field2D(const Grid& g) : Field2D(g.N, g.M) {}

  double& v(int i, int j) { return u2[static_cast<std::size_t>(i + N * j)]; }
  double& w(int i, int j) { return u3[static_cast<std::size_t>(i + N * j)]; }
  double v(int i, int j) const { return u2[static_cast<std::size_t>(i + N * j)]; }
  double w(int i, int j) const { return u3[static_cast<std::size_t>(i + N * j)]; }

  bool matches(const Grid& g) const { return N == g.N && M == g.M; }

  Field2D& operator*=(double s) {
    for (double& x : u2) x *= s;
    for (double& x : u3) x *= s;
    ghost_lo *= s;
    ghost_hi *= s;
    return *this;
  }
};

/// Physical (unit-basis) azimuthal displacement psi * u2 at a node.
inline double physical_u2(const Field2D& u, const Grid& g, const SurfaceFamily& s, int i, int j) {
  return psi_bar2(s, g.x2(i), g.x3(j)) * u.v(i, j);
}

}  // namespace shellfound
