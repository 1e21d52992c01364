#pragma once

// Sparse square system assembled from per-unknown equations.  Row k is the
// equation that owns unknown k, so diag(k) is the coefficient a Jacobi sweep
// divides by.

#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "shellfound/linear_form.hpp"

namespace shellfound {

enum class EqClass : std::uint8_t {
  dirichlet,
  interior,
  side,
  shell,
  shell_end,
  ghost,
  interface,
  layer_interior,
  layer_side,
  layer_top,
  closure,
  count_
};

inline const char* eq_class_name(EqClass c) {
  switch (c) {
    case EqClass::dirichlet: return "dirichlet";
    case EqClass::interior: return "interior";
    case EqClass::side: return "side";
    case EqClass::shell: return "shell";
    case EqClass::shell_end: return "shell_end";
    case EqClass::ghost: return "ghost";
    case EqClass::interface: return "interface";
    case EqClass::layer_interior: return "layer_interior";
    case EqClass::layer_side: return "layer_side";
    case EqClass::layer_top: return "layer_top";
    case EqClass::closure: return "closure";
    default: return "?";
  }
}

/// Unknowns addressed by index: v at 2 base(i, j), w at 2 base(i, j) + 1.
template <class NodeMap>
struct UnknownAccess {
  NodeMap map;
  int ghost_base = -1;

  LinearForm v(int i, int j) const { return LinearForm::unknown(2 * map(i, j)); }
  LinearForm w(int i, int j) const { return LinearForm::unknown(2 * map(i, j) + 1); }
  LinearForm ghost(int end) const { return LinearForm::unknown(ghost_base + end); }
};

/// Values read from a packed unknown vector through the same node map.
template <class NodeMap>
struct PackedAccess {
  NodeMap map;
  std::span<const double> x;
  int ghost_base = -1;

  double v(int i, int j) const { return x[static_cast<std::size_t>(2 * map(i, j))]; }
  double w(int i, int j) const { return x[static_cast<std::size_t>(2 * map(i, j) + 1)]; }
  double ghost(int end) const { return x[static_cast<std::size_t>(ghost_base + end)]; }
};

struct LinearSystem {
  int n = 0;
  std::vector<int> row_ptr;
  std::vector<int> col;
  std::vector<double> val;
  std::vector<double> rhs;   // A x = rhs
  std::vector<double> diag;
  std::vector<EqClass> cls;

  double row_dot(int k, std::span<const double> x) const {
    double s = 0.0;
    for (int q = row_ptr[k]; q < row_ptr[k + 1]; ++q) s += val[q] * x[static_cast<std::size_t>(col[q])];
    return s;
  }

  /// r = A x - rhs
  double residual(int k, std::span<const double> x) const { return row_dot(k, x) - rhs[k]; }
};

class SystemBuilder {
public:
  explicit SystemBuilder(int n) : rows_(static_cast<std::size_t>(n)), cls_(static_cast<std::size_t>(n)),
                                  set_(static_cast<std::size_t>(n), false) {}

  void set(int k, LinearForm eq, EqClass c) {
    if (set_[k]) throw std::logic_error("SystemBuilder: unknown " + std::to_string(k) + " owned twice");
    rows_[k] = std::move(eq.compress());
    cls_[k] = c;
    set_[k] = true;
  }

  LinearSystem finish() {
    LinearSystem s;
    s.n = static_cast<int>(rows_.size());
    s.row_ptr.reserve(rows_.size() + 1);
    s.row_ptr.push_back(0);
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      if (!set_[k]) throw std::logic_error("SystemBuilder: unknown " + std::to_string(k) + " has no equation");
      double d = 0.0;
      for (const auto& t : rows_[k].terms()) {
        if (t.index < 0 || t.index >= s.n) throw std::logic_error("SystemBuilder: index out of range");
        s.col.push_back(t.index);
        s.val.push_back(t.coeff);
        if (t.index == static_cast<int>(k)) d = t.coeff;
      }
      if (d == 0.0)
        throw std::logic_error("SystemBuilder: zero diagonal in row " + std::to_string(k) + " (" +
                               eq_class_name(cls_[k]) + ")");
      s.row_ptr.push_back(static_cast<int>(s.col.size()));
      s.rhs.push_back(-rows_[k].constant());
      s.diag.push_back(d);
    }
    s.cls = std::move(cls_);
    rows_.clear();
    return s;
  }

private:
  std::vector<LinearForm> rows_;
  std::vector<EqClass> cls_;
  std::vector<bool> set_;
};

}  // namespace shellfound
