#pragma once

// Text checkpoints with exact (hexadecimal floating point) values.
//
//   shellfound-field 1
//   N M dx2 dx3
//   ghost_lo ghost_hi
//   u2 u3            one line per node, index i + N j
//
// A two-body checkpoint starts with "shellfound-two-body 1", then the
// foundation grid line, the layer grid line, the foundation and layer node
// blocks (layer row 0 included) and finally "ghosts K" followed by K values.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>

#include "shellfound/grid.hpp"
#include "shellfound/two_body.hpp"

namespace shellfound {

namespace detail {

inline std::string hex(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%a", x);
  return buf;
}

inline double read_double(std::istream& is) {
  std::string tok;
  if (!(is >> tok)) throw std::runtime_error("checkpoint: unexpected end of input");
  char* end = nullptr;
  const double x = std::strtod(tok.c_str(), &end);
  if (end == tok.c_str() || *end != '\0') throw std::runtime_error("checkpoint: bad number '" + tok + "'");
  return x;
}

inline int read_int(std::istream& is) {
  long n = 0;
  if (!(is >> n) || n <= 0 || n > 100'000'000) throw std::runtime_error("checkpoint: bad size");
  return static_cast<int>(n);
}

inline void write_grid_line(std::ostream& os, const Grid& g) {
  os << g.N << ' ' << g.M << ' ' << hex(g.dx2) << ' ' << hex(g.dx3) << '\n';
}

inline void check_grid_line(std::istream& is, const Grid& g) {
  const int N = read_int(is), M = read_int(is);
  const double dx2 = read_double(is), dx3 = read_double(is);
  if (N != g.N || M != g.M || dx2 != g.dx2 || dx3 != g.dx3)
    throw std::runtime_error("checkpoint: grid does not match the requested grid");
}

inline void write_nodes(std::ostream& os, const Field2D& u) {
  for (std::size_t n = 0; n < u.u2.size(); ++n) os << hex(u.u2[n]) << ' ' << hex(u.u3[n]) << '\n';
}

inline void read_nodes(std::istream& is, Field2D& u) {
  for (std::size_t n = 0; n < u.u2.size(); ++n) {
    u.u2[n] = read_double(is);
    u.u3[n] = read_double(is);
  }
}

inline void expect(std::istream& is, const std::string& word) {
  std::string tok;
  if (!(is >> tok) || tok != word) throw std::runtime_error("checkpoint: expected '" + word + "'");
}

}  // namespace detail

inline void write_checkpoint(std::ostream& os, const Field2D& u, const Grid& g) {
  if (!u.matches(g)) throw std::invalid_argument("write_checkpoint: field/grid mismatch");
  os << "shellfound-field 1\n";
  detail::write_grid_line(os, g);
  os << detail::hex(u.ghost_lo) << ' ' << detail::hex(u.ghost_hi) << '\n';
  detail::write_nodes(os, u);
}

inline Field2D read_checkpoint(std::istream& is, const Grid& g) {
  detail::expect(is, "shellfound-field");
  detail::expect(is, "1");
  detail::check_grid_line(is, g);
  Field2D u(g);
  u.ghost_lo = detail::read_double(is);
  u.ghost_hi = detail::read_double(is);
  detail::read_nodes(is, u);
  return u;
}

inline void write_checkpoint(std::ostream& os, const TwoBodyField& w, const TwoBodyGrid& g) {
  os << "shellfound-two-body 1\n";
  detail::write_grid_line(os, g.foundation);
  detail::write_grid_line(os, g.layer);
  detail::write_nodes(os, w.foundation);
  detail::write_nodes(os, w.layer);
  os << "ghosts " << w.ghosts.size() << '\n';
  for (double x : w.ghosts) os << detail::hex(x) << '\n';
}

inline TwoBodyField read_two_body_checkpoint(std::istream& is, const TwoBodyGrid& g) {
  detail::expect(is, "shellfound-two-body");
  detail::expect(is, "1");
  detail::check_grid_line(is, g.foundation);
  detail::check_grid_line(is, g.layer);
  TwoBodyField w{Field2D(g.foundation), Field2D(g.layer), {}};
  detail::read_nodes(is, w.foundation);
  detail::read_nodes(is, w.layer);
  detail::expect(is, "ghosts");
  const int k = detail::read_int(is);
  w.ghosts.resize(static_cast<std::size_t>(k));
  for (double& x : w.ghosts) x = detail::read_double(is);
  return w;
}

}  // namespace shellfound
