#pragma once

// Differential geometry of the annular semi-prism
//
//   X(x1, x2, x3) = (x1, a sin x2, b cos x2) + x3 / phi(x2) * (0, b sin x2, a cos x2)
//
// The chart (x2, x3) is orthogonal with metric diag(1, psi^2, 1), where
// psi = phi(x2) + x3 a b / phi(x2)^2 is the length of dX/dx2.  The contact
// surface is x3 = 0; the foundation occupies x3 < 0.

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>

namespace shellfound {

inline constexpr double pi = std::numbers::pi;
inline constexpr double half_pi = 0.5 * std::numbers::pi;

/// Elliptic cylinder family with horizontal radius a and vertical radius b.
class SurfaceFamily {
public:
  SurfaceFamily(double a, double b) : a_(a), b_(b) {
    if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b))
      throw std::invalid_argument("SurfaceFamily: radii must be positive and finite");
  }

  double a() const { return a_; }
  double b() const { return b_; }

  /// Squared elliptic modulus e^2 = 1 - (b/a)^2; negative when b > a.
  double e2() const { return 1.0 - (b_ / a_) * (b_ / a_); }

private:
  double a_;
  double b_;
};

/// phi(x2) and its first two derivatives.
struct VarphiJet {
  double value;
  double d1;
  double d2;
};

inline double varphi(const SurfaceFamily& s, double x2) {
  const double sn = std::sin(x2), cs = std::cos(x2);
  return std::sqrt(s.b() * s.b() * sn * sn + s.a() * s.a() * cs * cs);
}

inline VarphiJet varphi_jet(const SurfaceFamily& s, double x2) {
  const double f = varphi(s, x2);
  const double k = s.b() * s.b() - s.a() * s.a();
  // phi phi' = k sin(2x)/2 and (phi phi')' = k cos(2x)
  const double q = 0.5 * k * std::sin(2.0 * x2);
  const double d1 = q / f;
  const double d2 = (k * std::cos(2.0 * x2) - d1 * d1) / f;
  return {f, d1, d2};
}

/// Metric factor psi(x2, x3) of the chart together with the partial
/// derivatives needed by second-order operators (d33 psi vanishes).
struct ChartMetric {
  double psi;
  double d2;   // d psi / d x2
  double d3;   // d psi / d x3 = a b / phi^2
  double d22;
  double d23;
};

inline ChartMetric chart_metric(const SurfaceFamily& s, double x2, double x3) {
  const VarphiJet p = varphi_jet(s, x2);
  const double ab = s.a() * s.b();
  const double c = ab / (p.value * p.value);
  const double c1 = -2.0 * ab * p.d1 / (p.value * p.value * p.value);
  const double c2 = -2.0 * ab *
                    (p.d2 / std::pow(p.value, 3) - 3.0 * p.d1 * p.d1 / std::pow(p.value, 4));
  ChartMetric m{p.value + x3 * c, p.d1 + x3 * c1, c, p.d2 + x3 * c2, c1};
  if (!(m.psi > 0.0))
    throw std::domain_error("chart metric degenerate: psi <= 0 at x2=" + std::to_string(x2) +
                            ", x3=" + std::to_string(x3));
  return m;
}

inline double psi_bar2(const SurfaceFamily& s, double x2, double x3) {
  return chart_metric(s, x2, x3).psi;
}

struct Curvatures {
  double H;           // mean curvature, positive
  double K;           // Gaussian curvature, identically zero
  double F_II_mixed;  // mixed second fundamental form F_[II]2^2 = -ab/phi^3
};

inline Curvatures curvatures(const SurfaceFamily& s, double x2) {
  const double f = varphi(s, x2);
  const double F = -s.a() * s.b() / (f * f * f);
  return {-0.5 * F, 0.0, F};
}

/// Nonzero Christoffel symbols of the second kind of the chart metric.
/// Every symbol with an x1 index vanishes, as do G^2_33, G^3_23 and G^3_33.
struct ChristoffelSet {
  double g2_22;  // d2 psi / psi
  double g2_23;  // d3 psi / psi
  double g3_22;  // -psi d3 psi

  /// Gamma^k_{ij} with 1-based indices in {1, 2, 3}.
  double operator()(int k, int i, int j) const {
    if (i > j) std::swap(i, j);
    if (k == 2 && i == 2 && j == 2) return g2_22;
    if (k == 2 && i == 2 && j == 3) return g2_23;
    if (k == 3 && i == 2 && j == 2) return g3_22;
    return 0.0;
  }
};

inline ChristoffelSet christoffel(const SurfaceFamily& s, double x2, double x3) {
  const ChartMetric m = chart_metric(s, x2, x3);
  return {m.d2 / m.psi, m.d3 / m.psi, -m.psi * m.d3};
}

namespace detail {

// 7-point Gauss / 15-point Kronrod nodes and weights on [-1, 1].
struct GaussKronrod15 {
  static constexpr std::array<double, 8> xk{
      0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
      0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
      0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
      0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
  static constexpr std::array<double, 8> wk{
      0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
      0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
      0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
      0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
  static constexpr std::array<double, 4> wg{
      0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
      0.381830050505118944950369775488975, 0.417959183673469387755102040816327};
};

template <class F>
double gk15(const F& f, double lo, double hi, double& err) {
  using GK = GaussKronrod15;
  const double c = 0.5 * (lo + hi), r = 0.5 * (hi - lo);
  const double fc = f(c);
  double kron = fc * GK::wk[7];
  double gauss = fc * GK::wg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = r * GK::xk[j];
    const double sum = f(c - dx) + f(c + dx);
    kron += GK::wk[j] * sum;
    if (j % 2 == 1) gauss += GK::wg[j / 2] * sum;
  }
  err = std::abs((kron - gauss) * r);
  return kron * r;
}

template <class F>
double adaptive_gk(const F& f, double lo, double hi, double tol, int depth) {
  double err = 0.0;
  const double whole = gk15(f, lo, hi, err);
  if (err <= tol || depth <= 0) return whole;
  const double mid = 0.5 * (lo + hi);
  return adaptive_gk(f, lo, mid, 0.5 * tol, depth - 1) +
         adaptive_gk(f, mid, hi, 0.5 * tol, depth - 1);
}

}  // namespace detail

/// Incomplete elliptic integral of the second kind,
/// E(x2, e) = int_0^x2 sqrt(1 - e^2 sin^2 t) dt, by adaptive Gauss-Kronrod
/// quadrature (absolute tolerance 1e-12).  Negative e2 is allowed; the
/// function is extended oddly to negative x2.
inline double ellip_E(double x2, double e2) {
  if (!std::isfinite(x2) || !std::isfinite(e2))
    throw std::domain_error("ellip_E: non-finite argument");
  if (x2 == 0.0) return 0.0;
  if (x2 < 0.0) return -ellip_E(-x2, e2);
  if (e2 > 1.0) {
    // integrand vanishes at sin^2 t = 1/e2
    const double t0 = std::asin(std::sqrt(1.0 / e2));
    if (x2 > t0) throw std::domain_error("ellip_E: integrand imaginary for e2 > 1 past its zero");
  }
  auto integrand = [e2](double t) {
    const double sn = std::sin(t);
    return std::sqrt(std::max(0.0, 1.0 - e2 * sn * sn));
  };
  // quarter-period panels keep the integrand smooth on each panel
  double total = 0.0;
  double lo = 0.0;
  while (lo < x2) {
    const double hi = std::min(x2, lo + half_pi);
    total += detail::adaptive_gk(integrand, lo, hi, 1e-12, 40);
    lo = hi;
  }
  return total;
}

inline double ellip_E_complete(double e2) { return ellip_E(half_pi, e2); }

enum class AssumptionStatus { pass, warn, fail };

struct ShellAssumptionReport {
  double max_hH;
  double max_h2K;
  double argmax_x2;
  AssumptionStatus status;
};

/// Thickness/curvature check 0 <= h^2 K < h H << 1.  "<< 1" is read as
/// max hH <= 0.1 (pass), 0.1 < max hH <= 0.5 (warn), beyond that fail.  A
/// violated inequality throws.
inline ShellAssumptionReport validate_shell_assumption(const SurfaceFamily& s, double h,
                                                       int samples = 721) {
  if (!(h > 0.0)) throw std::invalid_argument("validate_shell_assumption: h must be positive");
  ShellAssumptionReport rep{0.0, 0.0, 0.0, AssumptionStatus::pass};
  for (int k = 0; k < samples; ++k) {
    const double x2 = -half_pi + pi * k / (samples - 1);
    const Curvatures c = curvatures(s, x2);
    const double hH = h * c.H;
    const double h2K = h * h * c.K;
    if (h2K < 0.0 || !(hH > h2K))
      throw std::domain_error("shell assumption violated: need 0 <= h^2 K < h H");
    if (hH > rep.max_hH) {
      rep.max_hH = hH;
      rep.argmax_x2 = x2;
    }
    rep.max_h2K = std::max(rep.max_h2K, h2K);
  }
  if (rep.max_hH > 0.5) rep.status = AssumptionStatus::fail;
  else if (rep.max_hH > 0.1) rep.status = AssumptionStatus::warn;
  return rep;
}

/// Throws unless the thin-shell check passes or only warns.
inline ShellAssumptionReport require_shell_assumption(const SurfaceFamily& s, double h) {
  const ShellAssumptionReport r = validate_shell_assumption(s, h);
  if (r.status == AssumptionStatus::fail)
    throw std::domain_error("shell assumption violated: max hH = " + std::to_string(r.max_hH) +
                            " exceeds 0.5");
  return r;
}

}  // namespace shellfound
