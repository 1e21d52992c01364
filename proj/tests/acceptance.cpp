// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "shellfound/analysis.hpp"
#include "shellfound/cli.hpp"
#include "shellfound/verify.hpp"

using namespace shellfound;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, double a = 0, double b = 0, double c = 0, double d = 0) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

// |u2| is largest at the two ends of the contact row, with the quoted values.
Outcome figure1_trace() {
  const ModelParams p = params_from_deltas(figure_deltas());
  const Grid g = build_grid(p, 250);
  const ShellSolution s = solve(p, g, checks::direct_config());
  const int top = g.M - 1;
  int arg = 0;
  for (int i = 1; i < g.N; ++i)
    if (std::abs(s.field.v(i, top)) > std::abs(s.field.v(arg, top))) arg = i;
  const bool at_end = arg == 0 || arg == g.N - 1;
  const auto e = checks::row_ends(s.field, top);
  const bool ok = s.report.converged && at_end && checks::within(e.u2_max, 2.75e-4, 0.05) &&
                  checks::within(e.u2_min, -2.75e-4, 0.05) && checks::within(e.u3_max, -2.26e-4, 0.05) &&
                  checks::within(e.u3_min, -2.26e-4, 0.05);
  return {ok, fmt("u2(-pi/2) = %.4e, u2(pi/2) = %.4e, u3(pi/2) = %.4e, argmax|u2| at node %.0f", e.u2_min, e.u2_max,
                  e.u3_max, arg)};
}

Outcome figure2_trace() {
  const CheckResult r = checks::figure2();
  return {r.pass, r.detail};
}

ErrorCurve preset_curve(const std::string& name) {
  const Preset pr = preset(name);
  SweepOptions opt;
  opt.N = pr.N;
  opt.workers = 4;
  return sweep(*pr.sweep_param, pr.sweep_values, pr.deltas, opt);
}

double step_of(const ErrorCurve& c) { return c.samples[1].delta - c.samples[0].delta; }

bool spans(const ErrorCurve& c, double target) {
  return c.samples.size() >= 9 && c.samples.front().delta < target && c.samples.back().delta > target;
}

struct ExtremumCheck {
  const char* label;
  bool ok;
  std::string detail;
};

ExtremumCheck extremum_in(const ErrorCurve& c, ErrorComponent comp, ExtremumKind kind, double lo, double hi,
                          double value, double tol, const char* label) {
  const Extremum e = locate_extremum(c, comp, kind);
  const double pct = 100.0 * e.value;
  const bool ok = spans(c, 0.5 * (lo + hi)) && e.delta >= lo - 1e-12 && e.delta <= hi + 1e-12 &&
                  std::abs(pct - value) <= tol;
  return {label, ok,
          fmt("at %.5g (window [%.5g, %.5g]) value %.3f%%", e.delta, lo, hi, pct) + fmt(" (target %.3f%%)", value)};
}

Outcome sweep_extrema(const ErrorCurve& fE, const ErrorCurve& fh, const ErrorCurve& fnu, const ErrorCurve& fb) {
  using C = ErrorComponent;
  using K = ExtremumKind;
  std::vector<ExtremumCheck> v{
      extremum_in(fE, C::azimuthal, K::min, 5.5, 7.5, 0.852, 0.25, "dE"),
      extremum_in(fh, C::azimuthal, K::min, 0.125 - step_of(fh), 0.125 + step_of(fh), 0.927, 0.25, "dh"),
      extremum_in(fnu, C::azimuthal, K::min, 0.625 - step_of(fnu), 0.625 + step_of(fnu), 0.905, 0.25, "dnu"),
      extremum_in(fb, C::azimuthal, K::min, 0.975 - step_of(fb), 0.975 + step_of(fb), 0.920, 0.25, "db"),
      extremum_in(fh, C::radial, K::max, 0.25 - step_of(fh), 0.25 + step_of(fh), 4.67, 0.5, "dh radial max")};
  bool ok = true;
  std::string detail;
  for (const auto& e : v) {
    ok = ok && e.ok;
    detail += std::string("\n    ") + (e.ok ? "ok   " : "miss ") + e.label + ": " + e.detail;
  }
  return {ok, detail};
}

Outcome radial_trend(const ErrorCurve& fE) {
  double worst = 0.0, prev = std::nan("");
  int pairs = 0;
  for (const ErrorSample& s : fE.samples) {
    if (s.delta < 6.5 - 1e-12 || !s.valid()) continue;
    const double pct = 100.0 * s.radial;
    if (std::isfinite(prev)) {
      worst = std::max(worst, pct - prev);
      ++pairs;
    }
    prev = pct;
  }
  return {pairs >= 2 && worst <= 0.05, fmt("largest increase %.4f pp over %.0f consecutive pairs", worst, pairs)};
}

Outcome oracle_suite() {
  const auto t0 = std::chrono::steady_clock::now();
  const std::vector<std::function<CheckResult()>> suite{
      [] { return checks::christoffel_vs_embedding(100); },
      [] { return checks::ellip_E_vs_reference(50); },
      [] { return checks::mms_foundation(); },
      [] { return checks::mms_layer(); },
      [] { return checks::closed_form_ode(); },
      [] { return checks::energy_minimum(65, 50); },
      [] { return checks::zero_traction(); },
      [] { return checks::traction_linearity(); }};
  bool ok = true;
  std::string detail;
  for (const auto& f : suite) {
    CheckResult r;
    try {
      r = f();
    } catch (const std::exception& e) {
      r = {"exception", false, e.what()};
    }
    ok = ok && r.pass;
    detail += std::string("\n    ") + (r.pass ? "ok   " : "miss ") + r.name + ": " + r.detail;
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return {ok && secs <= 300.0, fmt("%.1f s", secs) + detail};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome determinism() {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "shellfound_acceptance";
  fs::create_directories(dir);
  const fs::path a = dir / "w1.csv", b = dir / "w8.csv";
  const std::string cli = SHELLFOUND_CLI;
  const int ra = std::system((cli + " solve-shell --preset defaults --workers 1 -o " + a.string()).c_str());
  const int rb = std::system((cli + " solve-shell --preset defaults --workers 8 -o " + b.string()).c_str());
  const std::string sa = slurp(a), sb = slurp(b);
  const bool ok = ra == 0 && rb == 0 && !sa.empty() && sa == sb;
  return {ok, fmt("exit codes %.0f/%.0f, %.0f bytes, identical=%.0f", ra, rb, double(sa.size()), sa == sb)};
}

}  // namespace

int main() {
  int failed = 0;
  auto report = [&](int n, const char* name, const std::function<Outcome()>& f) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = f();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!o.pass) ++failed;
    std::printf("%s criterion %d (%s) [%.1f s]: %s\n", o.pass ? "PASS" : "FAIL", n, name, secs, o.detail.c_str());
    std::fflush(stdout);
  };

  report(1, "bonded-shell end displacements", figure1_trace);
  report(2, "two-body end displacements", figure2_trace);

  ErrorCurve fE, fh, fnu, fb;
  report(3, "sweep extrema", [&] {
    fE = preset_curve("fig3");
    fh = preset_curve("fig4");
    fnu = preset_curve("fig5");
    fb = preset_curve("fig6");
    return sweep_extrema(fE, fh, fnu, fb);
  });
  report(4, "radial error decreasing in dE", [&] { return radial_trend(fE); });
  report(5, "oracle suite", oracle_suite);
  report(6, "determinism across workers", determinism);

  std::printf("%d of 6 criteria failed\n", failed);
  return failed == 0 ? 0 : 1;
}
