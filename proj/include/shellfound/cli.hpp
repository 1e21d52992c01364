#pragma once

// Batch front end shared by tools/shellfound.cpp and the tests.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "shellfound/analysis.hpp"
#include "shellfound/checkpoint.hpp"
#include "shellfound/closed_form.hpp"
#include "shellfound/solver.hpp"
#include "shellfound/two_body.hpp"
#include "shellfound/verify.hpp"

namespace shellfound {

enum ExitCode : int { exit_ok = 0, exit_verify_failed = 1, exit_config = 2, exit_divergence = 3, exit_no_convergence = 4 };

class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct Preset {
  std::string name;
  Deltas deltas;
  int N = 250;
  std::optional<SweepParam> sweep_param;
  std::vector<double> sweep_values;
};

inline std::vector<double> linspace(double from, double to, int steps) {
  if (steps < 2) throw ConfigError("need at least two sweep steps");
  std::vector<double> v(static_cast<std::size_t>(steps));
  for (int k = 0; k < steps; ++k) v[static_cast<std::size_t>(k)] = from + (to - from) * k / (steps - 1);
  return v;
}

/// Named configurations.  Sweep presets use grids that bracket the quoted
/// extrema with at least nine samples.
inline Preset preset(const std::string& name) {
  if (name == "fig1" || name == "fig2") return {name, figure_deltas(), 250, std::nullopt, {}};
  if (name == "defaults") return {name, default_deltas(), 250, std::nullopt, {}};
  if (name == "fig3") return {name, default_deltas(), 250, SweepParam::dE, linspace(2.0, 16.0, 29)};
  if (name == "fig4") return {name, default_deltas(), 250, SweepParam::dh, linspace(0.0625, 0.5, 15)};
  if (name == "fig5") return {name, default_deltas(), 250, SweepParam::dnu, linspace(0.25, 1.75, 13)};
  if (name == "fig6") return {name, default_deltas(), 250, SweepParam::db, linspace(0.875, 1.125, 11)};
  throw ConfigError("unknown preset '" + name + "' (expected fig1..fig6 or defaults)");
}

struct RunConfig {
  std::string command;
  std::string preset = "defaults";
  std::optional<double> dE, dnu, dh, db;
  std::optional<int> N;
  std::string method = "direct";
  double tol = 1e-8;
  long max_iter = 5'000'000;
  double relax = 0.6;
  int workers = 1;
  std::string output = "-";
  std::string manifest;  // empty: <output>.manifest, or stderr when writing to stdout
  std::string param;
  std::optional<double> from, to;
  std::optional<int> steps;
  std::vector<double> values;
  std::string level = "quick";
  std::string checkpoint_in;
  std::string checkpoint_out;
};

namespace detail {

inline std::string num(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return buf;
}

inline std::string val(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12e", x);
  return buf;
}

/// Ordered key=value record used for CSV headers and the run manifest.
class Record {
public:
  void add(const std::string& k, const std::string& v) { items_.emplace_back(k, v); }
  void add(const std::string& k, double v) { add(k, num(v)); }
  void add(const std::string& k, int v) { add(k, std::to_string(v)); }
  void add(const std::string& k, long v) { add(k, std::to_string(v)); }
  void add(const std::string& k, bool v) { add(k, std::string(v ? "true" : "false")); }

  void write(std::ostream& os, const char* prefix) const {
    for (const auto& [k, v] : items_) os << prefix << k << '=' << v << '\n';
  }

private:
  std::vector<std::pair<std::string, std::string>> items_;
};

struct Resolved {
  Preset base;
  Deltas deltas;
  ModelParams params;
  int N;
  SolverConfig solver;
};

inline Resolved resolve(const RunConfig& c) {
  Resolved r{preset(c.preset), {}, params_from_deltas(default_deltas()), 0, {}};
  r.deltas = r.base.deltas;
  if (c.dE) r.deltas.dE = *c.dE;
  if (c.dnu) r.deltas.dnu = *c.dnu;
  if (c.dh) r.deltas.dh = *c.dh;
  if (c.db) r.deltas.db = *c.db;
  r.params = params_from_deltas(r.deltas);
  r.N = c.N.value_or(r.base.N);
  r.solver.method = parse_method(c.method);
  r.solver.tol = c.tol;
  r.solver.max_iter = c.max_iter;
  r.solver.relax = c.relax;
  r.solver.workers = c.workers;
  if (!(c.tol > 0.0)) throw ConfigError("tol must be positive");
  if (c.max_iter < 1) throw ConfigError("max_iter must be positive");
  if (!(c.relax > 0.0 && c.relax < 2.0)) throw ConfigError("relax must lie in (0, 2)");
  if (c.workers < 1) throw ConfigError("workers must be at least 1");
  return r;
}

inline void describe(Record& rec, const RunConfig& c, const Resolved& r) {
  const ModelParams& p = r.params;
  rec.add("command", c.command);
  rec.add("preset", c.preset);
  rec.add("dE", r.deltas.dE);
  rec.add("dnu", r.deltas.dnu);
  rec.add("dh", r.deltas.dh);
  rec.add("db", r.deltas.db);
  rec.add("a", p.surface.a());
  rec.add("b", p.surface.b());
  rec.add("L", p.L);
  rec.add("h", p.h);
  rec.add("E_foundation", p.foundation.E);
  rec.add("nu_foundation", p.foundation.nu);
  rec.add("E_shell", p.shell.E);
  rec.add("nu_shell", p.shell.nu);
  rec.add("tau0", p.tau0);
  rec.add("tau_max", p.tau_max);
  rec.add("N", r.N);
  rec.add("method", std::string(method_name(r.solver.method)));
  rec.add("tol", r.solver.tol);
  rec.add("max_iter", r.solver.max_iter);
  rec.add("relax", r.solver.relax);
}

inline void describe_grid(Record& rec, const std::string& prefix, const Grid& g) {
  rec.add(prefix + "M", g.M);
  rec.add(prefix + "dx2", g.dx2);
  rec.add(prefix + "dx3", g.dx3);
  rec.add(prefix + "psi0", g.psi0);
}

inline void describe_report(Record& rec, const std::string& prefix, const SolveReport& s) {
  rec.add(prefix + "iterations", s.iterations);
  rec.add(prefix + "converged", s.converged);
  rec.add(prefix + "final_residual", s.final_residual);
  rec.add(prefix + "runtime_s", s.runtime);
  for (std::size_t k = 0; k < s.class_residual.size(); ++k)
    if (s.class_residual[k] > 0.0)
      rec.add(prefix + "residual_" + eq_class_name(static_cast<EqClass>(k)), s.class_residual[k]);
}

class Outputs {
public:
  explicit Outputs(const RunConfig& c) : path_(c.output), manifest_path_(c.manifest) {
    if (path_ != "-") {
      file_.open(path_);
      if (!file_) throw ConfigError("cannot write output file '" + path_ + "'");
    }
    if (manifest_path_.empty() && path_ != "-") manifest_path_ = path_ + ".manifest";
  }

  std::ostream& csv() { return path_ == "-" ? std::cout : file_; }

  void manifest(const Record& rec) {
    if (manifest_path_.empty()) {
      rec.write(std::cerr, "");
      return;
    }
    std::ofstream m(manifest_path_);
    if (!m) throw ConfigError("cannot write manifest '" + manifest_path_ + "'");
    rec.write(m, "");
  }

private:
  std::string path_;
  std::string manifest_path_;
  std::ofstream file_;
};

inline int status_of(const SolveReport& r) { return r.converged ? exit_ok : exit_no_convergence; }

inline void write_trace(std::ostream& os, const Field2D& f, const Grid& g, const SurfaceFamily& s, int row) {
  os << "x2,u2,u3,u2_physical\n";
  for (int i = 0; i < g.N; ++i)
    os << val(g.x2(i)) << ',' << val(f.v(i, row)) << ',' << val(f.w(i, row)) << ','
       << val(psi_bar2(s, g.x2(i), g.x3(row)) * f.v(i, row)) << '\n';
}

inline int run_solve_shell(const RunConfig& c, const Resolved& r, Outputs& out) {
  const Grid g = build_grid(r.params, r.N);
  std::optional<Field2D> init;
  if (!c.checkpoint_in.empty()) {
    std::ifstream in(c.checkpoint_in);
    if (!in) throw ConfigError("cannot read checkpoint '" + c.checkpoint_in + "'");
    init = read_checkpoint(in, g);
  }
  const ShellSolution s = solve(r.params, g, r.solver, init ? &*init : nullptr);
  Record head;
  describe(head, c, r);
  describe_grid(head, "", g);
  head.write(out.csv(), "# ");
  write_trace(out.csv(), s.field, g, r.params.surface, g.M - 1);
  if (!c.checkpoint_out.empty()) {
    std::ofstream ck(c.checkpoint_out);
    if (!ck) throw ConfigError("cannot write checkpoint '" + c.checkpoint_out + "'");
    write_checkpoint(ck, s.field, g);
  }
  Record man = head;
  man.add("workers", c.workers);
  describe_report(man, "", s.report);
  man.add("u2_at_min_end", s.field.v(0, g.M - 1));
  man.add("u2_at_max_end", s.field.v(g.N - 1, g.M - 1));
  man.add("u3_at_max_end", s.field.w(g.N - 1, g.M - 1));
  out.manifest(man);
  return status_of(s.report);
}

inline int run_solve_two_body(const RunConfig& c, const Resolved& r, Outputs& out) {
  const TwoBodyGrid g = build_two_body_grid(r.params, r.N);
  std::optional<TwoBodyField> init;
  if (!c.checkpoint_in.empty()) {
    std::ifstream in(c.checkpoint_in);
    if (!in) throw ConfigError("cannot read checkpoint '" + c.checkpoint_in + "'");
    init = read_two_body_checkpoint(in, g);
  }
  const TwoBodySolution s = solve_two_body(r.params, g, r.solver, init ? &*init : nullptr);
  Record head;
  describe(head, c, r);
  describe_grid(head, "foundation_", g.foundation);
  describe_grid(head, "layer_", g.layer);
  head.write(out.csv(), "# ");
  const int top = g.foundation.M - 1, ltop = g.layer.M - 1;
  auto& os = out.csv();
  os << "x2,u2,u3,u2_physical,layer_top_u2,layer_top_u3\n";
  for (int i = 0; i < g.foundation.N; ++i) {
    const double x2 = g.foundation.x2(i);
    os << val(x2) << ',' << val(s.field.foundation.v(i, top)) << ',' << val(s.field.foundation.w(i, top)) << ','
       << val(psi_bar2(r.params.surface, x2, 0.0) * s.field.foundation.v(i, top)) << ','
       << val(s.field.layer.v(i, ltop)) << ',' << val(s.field.layer.w(i, ltop)) << '\n';
  }
  if (!c.checkpoint_out.empty()) {
    std::ofstream ck(c.checkpoint_out);
    if (!ck) throw ConfigError("cannot write checkpoint '" + c.checkpoint_out + "'");
    write_checkpoint(ck, s.field, g);
  }
  Record man = head;
  man.add("workers", c.workers);
  describe_report(man, "", s.report);
  man.add("u2_at_max_end", s.field.foundation.v(g.foundation.N - 1, top));
  man.add("u3_at_max_end", s.field.foundation.w(g.foundation.N - 1, top));
  out.manifest(man);
  return status_of(s.report);
}

inline void describe_scales(Record& rec, const ModelParams& p) {
  const AsymptoticScales s = scales(p);
  const ScalingDiagnostics d = scaling_diagnostics(p);
  rec.add("alpha", s.alpha);
  rec.add("e2", s.e2);
  rec.add("phi_scale", s.phi_scale);
  rec.add("ratio_membrane_vs_shear", d.membrane_vs_shear);
  rec.add("ratio_membrane_vs_bulk", d.membrane_vs_bulk);
  rec.add("ratio_curvature_vs_bulk", d.curvature_vs_bulk);
}

inline int run_closed_form(const RunConfig& c, const Resolved& r, Outputs& out) {
  // odd sample count so that x2 = 0 is a row
  const int n = r.N | 1;
  Record head;
  describe(head, c, r);
  describe_scales(head, r.params);
  head.write(out.csv(), "# ");
  out.csv() << "x2,w2\n";
  for (int k = 0; k < n; ++k) {
    const double x2 = k == (n - 1) / 2 ? 0.0 : -half_pi + pi * k / (n - 1);
    out.csv() << val(x2) << ',' << val(w2_closed(r.params, x2)) << '\n';
  }
  out.manifest(head);
  return exit_ok;
}

inline std::vector<double> sweep_values(const RunConfig& c, const Resolved& r, SweepParam& param) {
  if (!c.param.empty()) {
    param = parse_sweep_param(c.param);
  } else if (r.base.sweep_param) {
    param = *r.base.sweep_param;
  } else {
    throw ConfigError("sweep needs --param or a sweep preset (fig3..fig6)");
  }
  if (!c.values.empty()) return c.values;
  if (c.from || c.to || c.steps) {
    if (!(c.from && c.to && c.steps)) throw ConfigError("--from, --to and --steps go together");
    if (!(*c.to > *c.from)) throw ConfigError("--to must exceed --from");
    return linspace(*c.from, *c.to, *c.steps);
  }
  if (r.base.sweep_param && *r.base.sweep_param == param) return r.base.sweep_values;
  throw ConfigError("sweep needs sample values (--from/--to/--steps or --values)");
}

inline int run_sweep(const RunConfig& c, const Resolved& r, Outputs& out) {
  SweepParam param{};
  const std::vector<double> values = sweep_values(c, r, param);
  for (double v : values) params_from_deltas(with_delta(r.deltas, param, v));  // validate before solving
  SweepOptions opt{r.N, r.solver, c.workers};
  const ErrorCurve curve = sweep(param, values, r.deltas, opt);
  Record head;
  describe(head, c, r);
  head.add("sweep_param", std::string(sweep_param_name(param)));
  head.add("samples", static_cast<int>(values.size()));
  head.write(out.csv(), "# ");
  write_curve_csv(out.csv(), curve);
  Record man = head;
  man.add("workers", c.workers);
  int bad = 0;
  for (const ErrorSample& s : curve.samples)
    if (!s.valid()) {
      ++bad;
      man.add("invalid_" + num(s.delta), s.note.empty() ? std::string("not converged") : s.note);
    }
  man.add("invalid_samples", bad);
  auto add_ext = [&](const char* key, ErrorComponent comp, ExtremumKind kind) {
    try {
      const Extremum e = locate_extremum(curve, comp, kind);
      man.add(std::string(key) + "_delta", e.delta);
      man.add(std::string(key) + "_value", e.value);
      man.add(std::string(key) + "_refined_delta", e.refined_delta);
      man.add(std::string(key) + "_monotone", e.monotone);
    } catch (const std::exception& ex) {
      man.add(std::string(key) + "_error", std::string(ex.what()));
    }
  };
  add_ext("azimuthal_min", ErrorComponent::azimuthal, ExtremumKind::min);
  add_ext("radial_max", ErrorComponent::radial, ExtremumKind::max);
  out.manifest(man);
  return bad == 0 ? exit_ok : exit_no_convergence;
}

inline int run_compare(const RunConfig& c, const Resolved& r, Outputs& out) {
  const TwoBodyGrid g = build_two_body_grid(r.params, r.N);
  const ShellSolution sh = solve(r.params, g.foundation, r.solver);
  const TwoBodySolution tb = solve_two_body(r.params, g, r.solver);
  Record head;
  describe(head, c, r);
  describe_grid(head, "foundation_", g.foundation);
  describe_grid(head, "layer_", g.layer);
  const auto az = relative_error(sh.field, tb.field, 2), rad = relative_error(sh.field, tb.field, 3);
  head.add("azimuthal_error", az ? num(*az) : std::string("undefined"));
  head.add("radial_error", rad ? num(*rad) : std::string("undefined"));
  describe_scales(head, r.params);
  head.write(out.csv(), "# ");
  const int top = g.foundation.M - 1;
  out.csv() << "x2,shell_u2,shell_u3,twobody_u2,twobody_u3\n";
  for (int i = 0; i < g.foundation.N; ++i)
    out.csv() << val(g.foundation.x2(i)) << ',' << val(sh.field.v(i, top)) << ',' << val(sh.field.w(i, top)) << ','
              << val(tb.field.foundation.v(i, top)) << ',' << val(tb.field.foundation.w(i, top)) << '\n';
  Record man = head;
  man.add("workers", c.workers);
  describe_report(man, "shell_", sh.report);
  describe_report(man, "twobody_", tb.report);
  out.manifest(man);
  return std::max(status_of(sh.report), status_of(tb.report));
}

inline int run_verify(const RunConfig& c, Outputs& out) {
  VerifyLevel level;
  if (c.level == "quick") level = VerifyLevel::quick;
  else if (c.level == "full") level = VerifyLevel::full;
  else throw ConfigError("verify level must be quick or full");
  bool ok = true;
  for (const CheckResult& r : verify(level)) {
    out.csv() << (r.pass ? "PASS " : "FAIL ") << r.name << ": " << r.detail << '\n';
    ok = ok && r.pass;
  }
  return ok ? exit_ok : exit_verify_failed;
}

}  // namespace detail

/// Executes one command; returns the process exit status.
inline int run(const RunConfig& c, std::ostream& err = std::cerr) {
  try {
    detail::Outputs out(c);
    if (c.command == "verify") return detail::run_verify(c, out);
    const detail::Resolved r = detail::resolve(c);
    if (c.command == "solve-shell") return detail::run_solve_shell(c, r, out);
    if (c.command == "solve-two-body") return detail::run_solve_two_body(c, r, out);
    if (c.command == "closed-form") return detail::run_closed_form(c, r, out);
    if (c.command == "sweep") return detail::run_sweep(c, r, out);
    if (c.command == "compare") return detail::run_compare(c, r, out);
    throw ConfigError("unknown command '" + c.command + "'");
  } catch (const DivergenceError& e) {
    err << "error: solver diverged: " << e.what() << '\n';
    return exit_divergence;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return exit_config;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return exit_config;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return exit_config;
  } catch (const std::runtime_error& e) {
    err << "error: " << e.what() << '\n';
    return exit_config;
  }
}

}  // namespace shellfound
