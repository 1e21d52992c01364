// shellfound: batch driver for the shell-on-foundation solvers.
//
//   shellfound solve-shell --preset fig1 -o trace.csv
//   shellfound sweep --param dE --from 2 --to 16 --steps 15 --workers 4
//   shellfound verify --level full
//
// Flags may also come from a key=value file given with --config.

#include <iostream>

#include "CLI11.hpp"
#include "shellfound/cli.hpp"

int main(int argc, char** argv) {
  using namespace shellfound;
  RunConfig c;
  CLI::App app{"Shell on elastic foundation: solvers, sweeps and checks"};
  app.set_config("--config", "", "key=value configuration file");
  app.require_subcommand(1);

  auto model_opts = [&c](CLI::App* s) {
    s->add_option("--preset", c.preset, "fig1..fig6 or defaults")->capture_default_str();
    s->add_option("--dE", c.dE, "shell/foundation Young's modulus ratio");
    s->add_option("--dnu", c.dnu, "shell/foundation Poisson ratio ratio");
    s->add_option("--dh", c.dh, "shell thickness over foundation depth");
    s->add_option("--db", c.db, "cross-section axis ratio b/a");
    s->add_option("-N,--N", c.N, "azimuthal grid points");
    s->add_option("--method", c.method, "jacobi, sor or direct")->capture_default_str();
    s->add_option("--tol", c.tol, "scaled residual tolerance")->capture_default_str();
    s->add_option("--max-iter", c.max_iter, "iteration cap")->capture_default_str();
    s->add_option("--relax", c.relax, "Jacobi damping / SOR factor")->capture_default_str();
    s->add_option("--workers", c.workers, "OpenMP threads")->capture_default_str();
    s->add_option("-o,--output", c.output, "CSV path, - for stdout")->capture_default_str();
    s->add_option("--manifest", c.manifest, "manifest path (default <output>.manifest)");
  };

  auto* shell = app.add_subcommand("solve-shell", "solve the shell-on-foundation model");
  auto* two = app.add_subcommand("solve-two-body", "solve the bonded two-body model");
  for (auto* s : {shell, two}) {
    model_opts(s);
    s->add_option("--checkpoint-in", c.checkpoint_in, "initial field");
    s->add_option("--checkpoint-out", c.checkpoint_out, "write the converged field");
  }
  auto* closed = app.add_subcommand("closed-form", "membrane-limit azimuthal displacement");
  model_opts(closed);
  auto* sw = app.add_subcommand("sweep", "relative error between the models over one parameter");
  model_opts(sw);
  sw->add_option("--param", c.param, "dE, dnu, dh or db");
  sw->add_option("--from", c.from);
  sw->add_option("--to", c.to);
  sw->add_option("--steps", c.steps);
  sw->add_option("--values", c.values, "explicit sample values")->delimiter(',');
  auto* cmp = app.add_subcommand("compare", "both models on one configuration");
  model_opts(cmp);
  auto* ver = app.add_subcommand("verify", "oracle checks");
  ver->add_option("--level", c.level, "quick or full")->capture_default_str();
  ver->add_option("-o,--output", c.output)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : exit_config;
  }
  c.command = app.get_subcommands().front()->get_name();
  return run(c);
}
