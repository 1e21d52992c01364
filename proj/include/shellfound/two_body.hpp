#pragma once

// Foundation on [-L, 0] plus a resolved elastic layer on [0, h] in the same
// chart, bonded along x3 = 0.  Interface rows share displacement unknowns.
//
// Stress continuity at interior interface nodes uses fictitious values: each
// body's Navier operator is extended to the interface with one ghost row
// beyond it, and the two traction jumps, taken with central x3 differences
// through those ghosts, are set to zero.  For equal materials and spacing the
// ghosts coincide with the neighbouring rows of the other body and the scheme
// is the single-body interior stencil.  At the two interface corners the
// tractions are matched with one-sided differences and the corner ghosts
// (read only by the mixed derivative of the neighbouring node) are copied
// from the other body.  There the scheme differs from a single-body side
// stencil, whose corner load datum is ambiguous where the side traction
// jumps from 0 to tau.

#include <array>
#include <stdexcept>
#include <vector>

#include "shellfound/foundation.hpp"
#include "shellfound/grid.hpp"
#include "shellfound/solver.hpp"
#include "shellfound/system.hpp"

namespace shellfound {

struct TwoBodyGrid {
  Grid foundation;
  Grid layer;
};

inline TwoBodyGrid build_two_body_grid(const ModelParams& p, int N) {
  return {build_grid(p, N, Psi0Rule::contact), build_layer_grid(p, N)};
}

struct TwoBodyField {
  Field2D foundation;
  Field2D layer;               // row 0 duplicates the foundation top row
  std::vector<double> ghosts;  // per interface node: foundation (v, w), layer (v, w)
};

namespace detail {

struct TwoBodyLayout {
  int N, Mf, Ml;
  int ghost_node0() const { return N * Mf + N * (Ml - 1); }
  int count() const { return 2 * ghost_node0() + 4 * N; }
};

// Foundation chart rows 0..Mf-1; row Mf is the foundation ghost row.
struct FoundationSideNodes {
  TwoBodyLayout L;
  int operator()(int i, int j) const {
    if (j == L.Mf) return L.ghost_node0() + 2 * i;
    return i + L.N * j;
  }
};

// Layer chart rows 0..Ml-1; row 0 is the foundation top row, row -1 the
// layer ghost row.
struct LayerSideNodes {
  TwoBodyLayout L;
  int operator()(int i, int j) const {
    if (j == -1) return L.ghost_node0() + 2 * i + 1;
    if (j == 0) return i + L.N * (L.Mf - 1);
    return L.N * L.Mf + i + L.N * (j - 1);
  }
};

template <class Access>
auto layer_side_rows(const Access& u, const ModelParams& p, const Grid& g, int i, int j, Diff x3_kind) {
  auto s = side_stresses(u, p.surface, lame(p.shell), g, i, j, x3_kind);
  s[1] -= (i == 0 ? p.tau0 : p.tau_max);
  return s;  // {shear, T22 - tau}
}

/// Interface traction jumps {T^3_2, T^3_3} (foundation minus layer).
template <class FA, class LA>
auto interface_jumps(const FA& uf, const LA& ul, const ModelParams& p, const TwoBodyGrid& g, int i) {
  const bool corner = i == 0 || i == g.foundation.N - 1;
  const auto tf = face_tractions(uf, p.surface, lame(p.foundation), g.foundation, i, g.foundation.M - 1,
                                 corner ? Diff::backward : Diff::central);
  const auto tl =
      face_tractions(ul, p.surface, lame(p.shell), g.layer, i, 0, corner ? Diff::forward : Diff::central);
  return std::array{tf[0] - tl[0], tf[1] - tl[1]};
}

}  // namespace detail

inline void check_two_body_grid(const TwoBodyGrid& g) {
  if (g.foundation.N != g.layer.N || g.foundation.dx2 != g.layer.dx2)
    throw std::invalid_argument("two-body grids must match in x2");
  if (g.foundation.M < 3 || g.layer.M < 3) throw std::invalid_argument("two-body grids need >= 3 rows");
}

inline LinearSystem assemble_two_body(const ModelParams& p, const TwoBodyGrid& g) {
  check_two_body_grid(g);
  const Grid& gf = g.foundation;
  const Grid& gl = g.layer;
  const detail::TwoBodyLayout L{gf.N, gf.M, gl.M};
  const UnknownAccess<detail::FoundationSideNodes> F{{L}};
  const UnknownAccess<detail::LayerSideNodes> Y{{L}};
  const LameParameters cf = lame(p.foundation), cl = lame(p.shell);
  const int N = gf.N, topf = gf.M - 1, topl = gl.M - 1;
  SystemBuilder B(L.count());
  auto put = [&](int node, auto&& rows, EqClass c, int first, int second) {
    B.set(2 * node, std::move(rows[first]), c);
    B.set(2 * node + 1, std::move(rows[second]), c);
  };

  for (int j = 0; j < topf; ++j) {
    for (int i = 0; i < N; ++i) {
      const int node = i + N * j;
      if (j == 0) {
        B.set(2 * node, F.v(i, j), EqClass::dirichlet);
        B.set(2 * node + 1, F.w(i, j), EqClass::dirichlet);
      } else if (i == 0 || i == N - 1) {
        put(node, side_stresses(F, p.surface, cf, gf, i, j, Diff::central), EqClass::side, 1, 0);
      } else {
        put(node, navier_at(F, p.surface, cf, gf, i, j), EqClass::interior, 0, 1);
      }
    }
  }

  for (int i = 0; i < N; ++i) {
    const int node = i + N * topf;
    const int gnode_f = L.ghost_node0() + 2 * i, gnode_l = gnode_f + 1;
    if (i == 0 || i == N - 1) {
      put(node, detail::interface_jumps(F, Y, p, g, i), EqClass::interface, 0, 1);
      B.set(2 * gnode_f, F.v(i, gf.M) - Y.v(i, 1), EqClass::closure);
      B.set(2 * gnode_f + 1, F.w(i, gf.M) - Y.w(i, 1), EqClass::closure);
      B.set(2 * gnode_l, Y.v(i, -1) - F.v(i, topf - 1), EqClass::closure);
      B.set(2 * gnode_l + 1, Y.w(i, -1) - F.w(i, topf - 1), EqClass::closure);
    } else {
      // The jump rows own the shared node with both ghost pairs at column i
      // eliminated through the Navier rows; the Navier rows own the ghosts.
      // Left as plain rows, D^-1 A has eigenvalues with negative real part.
      auto nf = navier_at(F, p.surface, cf, gf, i, topf);
      auto nl = navier_at(Y, p.surface, cl, gl, i, 0);
      const auto [gfv, gfw] = eliminate_pair(nf[0], nf[1], 2 * gnode_f, 2 * gnode_f + 1);
      const auto [glv, glw] = eliminate_pair(nl[0], nl[1], 2 * gnode_l, 2 * gnode_l + 1);
      auto jump = detail::interface_jumps(F, Y, p, g, i);
      for (auto& r : jump)
        r = r.substitute(2 * gnode_f, gfv).substitute(2 * gnode_f + 1, gfw)
                .substitute(2 * gnode_l, glv).substitute(2 * gnode_l + 1, glw);
      put(node, jump, EqClass::interface, 0, 1);
      put(gnode_f, nf, EqClass::ghost, 0, 1);
      put(gnode_l, nl, EqClass::ghost, 0, 1);
    }
  }

  for (int j = 1; j < gl.M; ++j) {
    for (int i = 0; i < N; ++i) {
      const int node = N * gf.M + i + N * (j - 1);
      const bool side = i == 0 || i == N - 1;
      if (j == topl) {
        auto t = face_tractions(Y, p.surface, cl, gl, i, j, Diff::backward);
        if (side) {
          auto s = detail::layer_side_rows(Y, p, gl, i, j, Diff::backward);
          B.set(2 * node, std::move(s[1]), EqClass::layer_side);
        } else {
          B.set(2 * node, std::move(t[0]), EqClass::layer_top);
        }
        B.set(2 * node + 1, std::move(t[1]), EqClass::layer_top);
      } else if (side) {
        put(node, detail::layer_side_rows(Y, p, gl, i, j, Diff::central), EqClass::layer_side, 1, 0);
      } else {
        put(node, navier_at(Y, p.surface, cl, gl, i, j), EqClass::layer_interior, 0, 1);
      }
    }
  }
  return B.finish();
}

inline std::vector<double> pack(const TwoBodyField& w, const TwoBodyGrid& g) {
  const detail::TwoBodyLayout L{g.foundation.N, g.foundation.M, g.layer.M};
  std::vector<double> x(static_cast<std::size_t>(L.count()), 0.0);
  const std::size_t nf = w.foundation.u2.size();
  for (std::size_t n = 0; n < nf; ++n) {
    x[2 * n] = w.foundation.u2[n];
    x[2 * n + 1] = w.foundation.u3[n];
  }
  const std::size_t row = static_cast<std::size_t>(g.layer.N);
  for (std::size_t n = row; n < w.layer.u2.size(); ++n) {
    x[2 * (nf + n - row)] = w.layer.u2[n];
    x[2 * (nf + n - row) + 1] = w.layer.u3[n];
  }
  const std::size_t gb = 2 * static_cast<std::size_t>(L.ghost_node0());
  for (std::size_t k = 0; k < w.ghosts.size() && gb + k < x.size(); ++k) x[gb + k] = w.ghosts[k];
  return x;
}

inline TwoBodyField unpack_two_body(std::span<const double> x, const TwoBodyGrid& g) {
  const detail::TwoBodyLayout L{g.foundation.N, g.foundation.M, g.layer.M};
  TwoBodyField w{Field2D(g.foundation), Field2D(g.layer), {}};
  const std::size_t nf = w.foundation.u2.size();
  for (std::size_t n = 0; n < nf; ++n) {
    w.foundation.u2[n] = x[2 * n];
    w.foundation.u3[n] = x[2 * n + 1];
  }
  const int topf = g.foundation.M - 1;
  for (int i = 0; i < g.layer.N; ++i) {
    w.layer.v(i, 0) = w.foundation.v(i, topf);
    w.layer.w(i, 0) = w.foundation.w(i, topf);
  }
  const std::size_t row = static_cast<std::size_t>(g.layer.N);
  for (std::size_t n = row; n < w.layer.u2.size(); ++n) {
    w.layer.u2[n] = x[2 * (nf + n - row)];
    w.layer.u3[n] = x[2 * (nf + n - row) + 1];
  }
  const std::size_t gb = 2 * static_cast<std::size_t>(L.ghost_node0());
  w.ghosts.assign(x.begin() + static_cast<std::ptrdiff_t>(gb), x.end());
  return w;
}

struct TwoBodySolution {
  TwoBodyField field;
  SolveReport report;
};

inline TwoBodySolution solve_two_body(const ModelParams& p, const TwoBodyGrid& g, const SolverConfig& cfg,
                                      const TwoBodyField* initial = nullptr) {
  const LinearSystem A = assemble_two_body(p, g);
  std::vector<double> x =
      initial ? pack(*initial, g) : std::vector<double>(static_cast<std::size_t>(A.n), 0.0);
  SolveReport rep = solve_system(A, x, cfg, displacement_scale(p));
  return {unpack_two_body(x, g), std::move(rep)};
}

// ---------------------------------------------------------------------------
// Residual operators on stored fields.

/// Navier residual of the layer at 0 < i < N-1, 0 < j < M_layer - 1.
inline FoundationResidual layer_interior_residual(const Field2D& v, const ModelParams& p, const Grid& gl,
                                                  int i, int j) {
  if (i <= 0 || i >= gl.N - 1 || j <= 0 || j >= gl.M - 1)
    throw std::out_of_range("layer_interior_residual: node is not interior to the layer");
  const auto r = navier_at(FieldValues{&v}, p.surface, lame(p.shell), gl, i, j);
  return {r[0], r[1]};
}

struct LayerBoundaryResiduals {
  std::vector<std::array<double, 2>> left;   // {shear, T22 - tau0}, rows 1..M-1
  std::vector<std::array<double, 2>> right;  // {shear, T22 - tau_max}
  std::vector<std::array<double, 2>> top;    // {T^3_2, T^3_3}, all columns
};

inline LayerBoundaryResiduals layer_boundary_residuals(const Field2D& v, const ModelParams& p,
                                                       const Grid& gl) {
  if (!v.matches(gl)) throw std::invalid_argument("layer_boundary_residuals: field/grid mismatch");
  const FieldValues V{&v};
  LayerBoundaryResiduals r;
  const int top = gl.M - 1;
  for (int j = 1; j < gl.M; ++j) {
    const Diff k = j == top ? Diff::backward : Diff::central;
    r.left.push_back(detail::layer_side_rows(V, p, gl, 0, j, k));
    r.right.push_back(detail::layer_side_rows(V, p, gl, gl.N - 1, j, k));
  }
  for (int i = 0; i < gl.N; ++i) r.top.push_back(face_tractions(V, p.surface, lame(p.shell), gl, i, top, Diff::backward));
  return r;
}

/// Traction continuity {shear, normal} at interface column i.
inline std::array<double, 2> interface_residuals(const TwoBodyField& w, const ModelParams& p,
                                                 const TwoBodyGrid& g, int i) {
  const detail::TwoBodyLayout L{g.foundation.N, g.foundation.M, g.layer.M};
  const std::vector<double> x = pack(w, g);
  const PackedAccess<detail::FoundationSideNodes> F{{L}, x};
  const PackedAccess<detail::LayerSideNodes> Y{{L}, x};
  return detail::interface_jumps(F, Y, p, g, i);
}

}  // namespace shellfound
