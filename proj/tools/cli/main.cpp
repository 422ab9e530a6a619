#include <exception>
#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "commands.hpp"
#include "fluidmatch/error.hpp"

namespace {

void add_output(CLI::App* app, cli::OutputConfig& out) {
  static const std::map<std::string, cli::Format> formats{
      {"json", cli::Format::Json}, {"csv", cli::Format::Csv}, {"table", cli::Format::Table}};
  app->add_option("--format", out.format, "Output format")
      ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case))
      ->default_str("table");
  app->add_option("--out", out.out_dir, "Also write the output into this directory");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fluid matching costs, concavity diagnostics and pricing"};
  app.require_subcommand(1);
  cli::OutputConfig out;

  cli::SolveConfig solve;
  auto* s = app.add_subcommand("solve", "Solve the fluid LP at one rate vector");
  s->add_option("--bundle", solve.bundle, "Instance bundle (JSON)")->required()->check(CLI::ExistingFile);
  s->add_option("--lambda", solve.lambda, "Arrival rates, comma separated (default: upper box)")->delimiter(',');
  add_output(s, out);

  cli::SolveConfig classify;
  auto* cl = app.add_subcommand("classify", "Closed-form regime and indicators of a two-type instance");
  cl->add_option("--bundle", classify.bundle, "Instance bundle (JSON)")->required()->check(CLI::ExistingFile);
  cl->add_option("--lambda", classify.lambda, "Arrival rates, comma separated (default: upper box)")->delimiter(',');
  add_output(cl, out);

  cli::CertifyConfig cert;
  auto* ce = app.add_subcommand("certify", "Check sufficient conditions for (weak) concavity on the box");
  ce->add_option("--bundle", cert.bundle, "Instance bundle (JSON)")->required()->check(CLI::ExistingFile);
  add_output(ce, out);

  cli::DiagnoseConfig diag;
  auto* d = app.add_subcommand("diagnose", "Numerical curvature probes of the cost function");
  d->add_option("mode", diag.mode, "hessian | partials | probe")
      ->required()
      ->check(CLI::IsMember({"hessian", "partials", "probe"}));
  d->add_option("--bundle", diag.bundle, "Instance bundle (JSON)")->required()->check(CLI::ExistingFile);
  d->add_option("--lambda", diag.lambda, "Evaluation point, comma separated")->delimiter(',');
  d->add_option("--coord", diag.coord, "Coordinate for one-sided partials (0-based)");
  d->add_option("--step", diag.step, "Finite-difference step (default: scaled 1e-3)")->check(CLI::NonNegativeNumber);
  d->add_option("--samples", diag.samples, "Midpoint pairs to sample")->check(CLI::PositiveNumber);
  d->add_option("--rho", diag.rho, "Fixed curvature; omit to search")->check(CLI::NonNegativeNumber);
  d->add_option("--seed", diag.seed, "Sampling seed");
  add_output(d, out);

  cli::PriceConfig price;
  auto* p = app.add_subcommand("price", "Maximize revenue minus matching cost over the box");
  p->add_option("--bundle", price.bundle, "Instance bundle with demand (JSON)")->required()->check(CLI::ExistingFile);
  p->add_option("--solver", price.solver, "mm | pg")->check(CLI::IsMember({"mm", "pg"}));
  p->add_option("--lambda0", price.lambda0, "Starting rates (default: seeded uniform draw)")->delimiter(',');
  p->add_option("--eps", price.eps, "Stop when the objective moves less than this")->check(CLI::PositiveNumber);
  p->add_option("--time-cap", price.time_cap, "Wall-clock budget in seconds")->check(CLI::PositiveNumber);
  p->add_option("--step0", price.step0, "Initial projected-gradient step")->check(CLI::PositiveNumber);
  p->add_option("--delta-mm", price.delta_mm, "Curvature increment after a rejected step (0: automatic)")
      ->check(CLI::NonNegativeNumber);
  p->add_option("--rho-cap", price.rho_cap, "Abort once the curvature would exceed this")->check(CLI::PositiveNumber);
  p->add_option("--seed", price.seed, "Seed for the starting point");
  add_output(p, out);

  cli::IngestConfig ingest;
  auto* in = app.add_subcommand("ingest", "Cluster a trips CSV into agent types and write a bundle");
  in->add_option("--trips", ingest.trips, "Trips CSV")->required()->check(CLI::ExistingFile);
  in->add_option("--bundle-out", ingest.bundle_out, "Where to write the bundle JSON");
  in->add_option("--n-types", ingest.n_types, "Number of clusters")->check(CLI::PositiveNumber);
  in->add_option("--c-per-mile", ingest.c_per_mile, "Cost per mile (0.7, 0.9, 1.1 are typical)")
      ->check(CLI::PositiveNumber);
  in->add_option("--theta", ingest.theta, "equal:V or uniform:LO,HI");
  in->add_option("--hours", ingest.hours, "Hours covered by the trips")->check(CLI::PositiveNumber);
  in->add_option("--lambda-lower", ingest.lambda_lower, "Lower rate bound per type")->check(CLI::PositiveNumber);
  in->add_option("--seed", ingest.seed, "Clustering seed");
  add_output(in, out);

  cli::SynthConfig synth;
  auto* sy = app.add_subcommand("synth", "Generate synthetic trips around OD hotspots");
  sy->add_option("--trips-out", synth.trips_out, "Write the CSV here instead of stdout");
  sy->add_option("--trips", synth.trips, "Number of trips")->check(CLI::PositiveNumber);
  sy->add_option("--hotspots", synth.hotspots, "Number of OD corridors")->check(CLI::PositiveNumber);
  sy->add_option("--spread", synth.spread, "Gaussian noise around each endpoint (miles)")
      ->check(CLI::NonNegativeNumber);
  sy->add_option("--extent", synth.extent, "Side of the square region (miles)")->check(CLI::PositiveNumber);
  sy->add_option("--hours", synth.hours, "Time window for timestamps")->check(CLI::PositiveNumber);
  sy->add_option("--seed", synth.seed, "Generator seed");
  add_output(sy, out);

  cli::BenchmarkConfig bench;
  auto* b = app.add_subcommand("benchmark", "MM against projected gradient over instances and seeds");
  b->add_option("--bundle", bench.bundles, "Bundles to use instead of synthetic instances")->check(CLI::ExistingFile);
  b->add_option("--sizes", bench.sizes, "Synthetic type counts")->delimiter(',');
  b->add_option("--c-per-mile", bench.c_per_mile, "Synthetic costs per mile")->delimiter(',');
  b->add_option("--theta", bench.theta, "equal:V or uniform:LO,HI");
  b->add_option("--seeds", bench.seeds, "Starting-point seeds")->delimiter(',');
  b->add_option("--steps", bench.steps, "Projected-gradient initial steps")->delimiter(',');
  b->add_option("--eps", bench.eps, "Stopping tolerance")->check(CLI::PositiveNumber);
  b->add_option("--time-cap", bench.time_cap, "Per-run wall-clock budget in seconds")->check(CLI::PositiveNumber);
  b->add_option("--delta-mm", bench.delta_mm, "Curvature increment (0: automatic)")->check(CLI::NonNegativeNumber);
  b->add_option("--threads", bench.threads, "Worker threads (0: all cores)");
  b->add_option("--instance-seed", bench.instance_seed, "Seed of the synthetic instances");
  add_output(b, out);

  cli::ExamplesConfig ex;
  auto* e = app.add_subcommand("examples", "Reproduce the reference curvature pathologies");
  e->add_option("id", ex.id, "1..5")->required()->check(CLI::Range(1, 5));
  e->add_option("--resolution", ex.resolution, "Grid points per axis for the profit scan")->check(CLI::Range(3, 2000));
  add_output(e, out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& err) {
    return app.exit(err);
  } catch (const CLI::CallForAllHelp& err) {
    return app.exit(err);
  } catch (const CLI::ParseError& err) {
    app.exit(err);
    return cli::kBadInput;
  }

  try {
    if (*s) return cli::run_solve(solve, out);
    if (*cl) return cli::run_classify(classify, out);
    if (*ce) return cli::run_certify(cert, out);
    if (*d) return cli::run_diagnose(diag, out);
    if (*p) return cli::run_price(price, out);
    if (*in) return cli::run_ingest(ingest, out);
    if (*sy) return cli::run_synth(synth, out);
    if (*b) return cli::run_benchmark(bench, out);
    if (*e) return cli::run_examples(ex, out);
  } catch (const fluidmatch::ValidationError& err) {
    std::cerr << "error: " << err.what() << '\n';
    return cli::kBadInput;
  } catch (const fluidmatch::SolverError& err) {
    std::cerr << "solver failure: " << err.what() << '\n';
    return cli::kSolverFailure;
  } catch (const std::exception& err) {
    std::cerr << "internal error: " << err.what() << '\n';
    return 1;
  }
  return cli::kBadInput;
}
