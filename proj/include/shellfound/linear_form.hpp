#pragma once

// An affine combination  sum_k c_k x[idx_k] + constant  of entries of an
// unknown vector.  Discrete operators are written once as templates over the
// scalar type; instantiating them with double evaluates a residual, with
// LinearForm it yields the matrix row of the same equation.

#include <algorithm>
#include <cmath>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace shellfound {

class LinearForm {
public:
  struct Term {
    int index;
    double coeff;
  };

  LinearForm() = default;
  LinearForm(double constant) : constant_(constant) {}  // NOLINT: implicit on purpose

  static LinearForm unknown(int index, double coeff = 1.0) {
    LinearForm f;
    f.terms_.push_back({index, coeff});
    return f;
  }

  const std::vector<Term>& terms() const { return terms_; }
  double constant() const { return constant_; }

  double coeff(int index) const {
    double c = 0.0;
    for (const Term& t : terms_)
      if (t.index == index) c += t.coeff;
    return c;
  }

  double evaluate(std::span<const double> x) const {
    double s = constant_;
    for (const Term& t : terms_) s += t.coeff * x[static_cast<std::size_t>(t.index)];
    return s;
  }

  /// Merges repeated indices and drops exact zeros; terms end up sorted.
  LinearForm& compress() {
    std::sort(terms_.begin(), terms_.end(),
              [](const Term& l, const Term& r) { return l.index < r.index; });
    std::size_t out = 0;
    for (std::size_t k = 0; k < terms_.size();) {
      Term acc = terms_[k++];
      while (k < terms_.size() && terms_[k].index == acc.index) acc.coeff += terms_[k++].coeff;
      if (acc.coeff != 0.0) terms_[out++] = acc;
    }
    terms_.resize(out);
    return *this;
  }

  /// Replaces every occurrence of x[index] by expr.
  LinearForm substitute(int index, const LinearForm& expr) const {
    const double c = coeff(index);
    LinearForm out;
    out.constant_ = constant_;
    for (const Term& t : terms_)
      if (t.index != index) out.terms_.push_back(t);
    if (c != 0.0) out += c * expr;
    return out;
  }

  LinearForm& operator+=(const LinearForm& o) {
    terms_.insert(terms_.end(), o.terms_.begin(), o.terms_.end());
    constant_ += o.constant_;
    return *this;
  }
  LinearForm& operator-=(const LinearForm& o) {
    terms_.reserve(terms_.size() + o.terms_.size());
    for (const Term& t : o.terms_) terms_.push_back({t.index, -t.coeff});
    constant_ -= o.constant_;
    return *this;
  }
  LinearForm& operator*=(double s) {
    for (Term& t : terms_) t.coeff *= s;
    constant_ *= s;
    return *this;
  }
  LinearForm& operator/=(double s) { return *this *= (1.0 / s); }

  friend LinearForm operator+(LinearForm l, const LinearForm& r) { return l += r; }
  friend LinearForm operator-(LinearForm l, const LinearForm& r) { return l -= r; }
  friend LinearForm operator*(LinearForm l, double s) { return l *= s; }
  friend LinearForm operator*(double s, LinearForm l) { return l *= s; }
  friend LinearForm operator/(LinearForm l, double s) { return l /= s; }
  friend LinearForm operator-(LinearForm l) { return l *= -1.0; }

private:
  std::vector<Term> terms_;
  double constant_ = 0.0;
};

/// Solves the 2x2 system  forms[r] == 0  for the unknowns ids[0], ids[1],
/// returning each as an affine form in the remaining unknowns.
inline std::pair<LinearForm, LinearForm> eliminate_pair(const LinearForm& f0, const LinearForm& f1,
                                                        int id0, int id1) {
  const double a00 = f0.coeff(id0), a01 = f0.coeff(id1);
  const double a10 = f1.coeff(id0), a11 = f1.coeff(id1);
  const double det = a00 * a11 - a01 * a10;
  if (std::abs(det) <= 1e-300 * (std::abs(a00 * a11) + std::abs(a01 * a10) + 1e-300))
    throw std::runtime_error("eliminate_pair: singular ghost block");
  LinearForm r0 = f0.substitute(id0, 0.0).substitute(id1, 0.0);
  LinearForm r1 = f1.substitute(id0, 0.0).substitute(id1, 0.0);
  // [a00 a01; a10 a11] [g0; g1] = -[r0; r1]
  LinearForm g0 = (-a11 * r0 + a01 * r1) / det;
  LinearForm g1 = (a10 * r0 - a00 * r1) / det;
  return {g0.compress(), g1.compress()};
}

}  // namespace shellfound
