#include "commands.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "examples.hpp"
#include "fluidmatch/benchmark_harness.hpp"
#include "fluidmatch/bundle.hpp"
#include "fluidmatch/closed_form.hpp"
#include "fluidmatch/concavity.hpp"
#include "fluidmatch/error.hpp"
#include "fluidmatch/fluid_lp.hpp"
#include "fluidmatch/pricing.hpp"
#include "fluidmatch/serialization.hpp"
#include "fluidmatch/trips.hpp"
#include "tables.hpp"

namespace cli {

using namespace fluidmatch;
using nlohmann::ordered_json;

std::string extension(Format f) {
  switch (f) {
    case Format::Json: return "json";
    case Format::Csv: return "csv";
    case Format::Table: return "txt";
  }
  return "txt";
}

void emit(const OutputConfig& out, const std::string& name, const std::string& text) {
  std::cout << text;
  if (!text.empty() && text.back() != '\n') std::cout << '\n';
  if (out.out_dir.empty()) return;
  std::error_code ec;
  std::filesystem::create_directories(out.out_dir, ec);
  const auto path = std::filesystem::path(out.out_dir) / (name + "." + extension(out.format));
  std::ofstream f(path);
  if (!f) throw ValidationError("cannot write " + path.string());
  f << text;
  if (!text.empty() && text.back() != '\n') f << '\n';
}

namespace {

std::vector<double> rates_or_upper(const MatchingInstance& inst, const std::vector<double>& lambda) {
  const std::vector<double> r = lambda.empty() ? inst.lambda_upper : lambda;
  check_rates(inst, r);
  return r;
}

// Two-column CSV for reports without a tabular shape.
std::string key_value_csv(const std::vector<std::pair<std::string, std::string>>& rows) {
  std::string s = "key,value\n";
  for (const auto& [k, v] : rows) s += k + "," + v + "\n";
  return s;
}

std::string vec_cell(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ";" : "") + format_number(v[i]);
  return s;
}

}  // namespace

int run_solve(const SolveConfig& c, const OutputConfig& out) {
  const TypedInstanceBundle b = load_bundle(c.bundle);
  const auto lambda = rates_or_upper(b.matching, c.lambda);
  const FluidSolution s = solve_fluid_lp(b.matching, lambda);
  std::string text;
  switch (out.format) {
    case Format::Json: text = to_json(s); break;
    case Format::Csv: text = to_csv(s); break;
    case Format::Table: text = table(s); break;
  }
  emit(out, "solution", text);
  return kOk;
}

int run_classify(const SolveConfig& c, const OutputConfig& out) {
  const TypedInstanceBundle b = load_bundle(c.bundle);
  if (b.matching.size() != 2) throw ValidationError("classify needs a two-type instance");
  const auto lambda = rates_or_upper(b.matching, c.lambda);
  const TwoTypeSolution s = solve_two_type(b.matching, lambda);
  std::string text;
  switch (out.format) {
    case Format::Json: text = to_json(s); break;
    case Format::Csv:
      text = key_value_csv({{"case", std::string(to_string(s.case_id))},
                            {"delta1", format_number(s.indicators.delta1)},
                            {"delta2", format_number(s.indicators.delta2)},
                            {"delta3", format_number(s.indicators.delta3)},
                            {"relabeled", s.relabeled ? "true" : "false"},
                            {"objective", format_number(s.solution.objective)}});
      break;
    case Format::Table: text = table(s); break;
  }
  emit(out, "classification", text);
  return kOk;
}

int run_certify(const CertifyConfig& c, const OutputConfig& out) {
  const TypedInstanceBundle b = load_bundle(c.bundle);
  const ConcavityCertificate cert = certify(b.matching);
  std::string text;
  switch (out.format) {
    case Format::Json: text = to_json(cert); break;
    case Format::Csv: {
      std::vector<std::pair<std::string, std::string>> rows{{"verdict", std::string(to_string(cert.verdict))},
                                                            {"rule", cert.rule ? std::string(to_string(*cert.rule)) : ""}};
      if (cert.tau1) rows.emplace_back("tau1", format_number(*cert.tau1));
      if (cert.tau2) rows.emplace_back("tau2", format_number(*cert.tau2));
      rows.emplace_back("critical_eff", vec_cell(cert.critical_eff));
      rows.emplace_back("required_lower_bounds", vec_cell(cert.required_lower_bounds));
      if (cert.witness) rows.emplace_back("witness", vec_cell(cert.witness->lambda));
      text = key_value_csv(rows);
      break;
    }
    case Format::Table: text = table(cert); break;
  }
  emit(out, "certificate", text);
  return kOk;
}

int run_diagnose(const DiagnoseConfig& c, const OutputConfig& out) {
  const TypedInstanceBundle b = load_bundle(c.bundle);
  const MatchingInstance& inst = b.matching;
  std::string text;
  if (c.mode == "hessian") {
    const auto lambda = rates_or_upper(inst, c.lambda);
    const HessianEstimate h = numerical_hessian(inst, lambda, c.step);
    switch (out.format) {
      case Format::Json: text = to_json(h); break;
      case Format::Csv: {
        text = "i,j,value\n";
        for (std::size_t i = 0; i < h.hessian.rows(); ++i)
          for (std::size_t j = 0; j < h.hessian.cols(); ++j)
            text += std::to_string(i) + "," + std::to_string(j) + "," + format_number(h.hessian(i, j)) + "\n";
        break;
      }
      case Format::Table: text = table(h); break;
    }
  } else if (c.mode == "partials") {
    const auto lambda = rates_or_upper(inst, c.lambda);
    const OneSidedPartials p = one_sided_partials(inst, lambda, c.coord, c.step);
    switch (out.format) {
      case Format::Json: text = to_json(p); break;
      case Format::Csv:
        text = key_value_csv({{"left", format_number(p.left)},
                              {"right", format_number(p.right)},
                              {"step", format_number(p.step)},
                              {"violation", p.violation ? "true" : "false"}});
        break;
      case Format::Table: text = table(p); break;
    }
  } else {
    ProbeOptions opts;
    opts.seed = c.seed;
    if (c.rho) {
      const MidpointReport r = probe_midpoint_concavity(inst, c.samples, *c.rho, opts);
      switch (out.format) {
        case Format::Json: text = to_json(r); break;
        case Format::Csv:
          text = key_value_csv({{"rho", format_number(r.rho)},
                                {"samples", std::to_string(r.samples)},
                                {"violations", std::to_string(r.violations)},
                                {"worst_violation", format_number(r.worst_violation)}});
          break;
        case Format::Table: text = table(r); break;
      }
    } else {
      const RhoSearchResult r = find_weak_concavity_rho(inst, c.samples, opts);
      switch (out.format) {
        case Format::Json: text = to_json(r); break;
        case Format::Csv:
          text = key_value_csv({{"found", r.found ? "true" : "false"},
                                {"rho", format_number(r.rho)},
                                {"violations", std::to_string(r.report.violations)},
                                {"worst_violation", format_number(r.report.worst_violation)}});
          break;
        case Format::Table: text = table(r); break;
      }
    }
  }
  emit(out, "diagnose_" + c.mode, text);
  return kOk;
}

int run_price(const PriceConfig& c, const OutputConfig& out) {
  const TypedInstanceBundle b = load_bundle(c.bundle);
  if (!b.demand) throw ValidationError("bundle has no demand model; pricing needs one");
  std::vector<double> lambda0 = c.lambda0.empty() ? sample_lambda0(b.matching, "cli", c.seed) : c.lambda0;
  check_rates(b.matching, lambda0);
  PricingOptions opts;
  opts.eps = c.eps;
  opts.time_cap = c.time_cap;
  opts.delta_mm = c.delta_mm;
  opts.rho_cap = c.rho_cap;
  const PricingResult r = c.solver == "mm" ? mm_solve(b.matching, *b.demand, lambda0, opts)
                                           : pg_solve(b.matching, *b.demand, lambda0, c.step0, opts);
  std::string text;
  switch (out.format) {
    case Format::Json: text = to_json(r); break;
    case Format::Csv: text = to_csv(r); break;
    case Format::Table: text = table(r); break;
  }
  emit(out, "pricing_" + c.solver, text);
  return r.time_capped ? kTimeCapped : kOk;
}

int run_ingest(const IngestConfig& c, const OutputConfig& out) {
  const auto trips = load_trips_csv(c.trips);
  BundleOptions opts;
  opts.n_types = c.n_types;
  opts.cost_per_mile = c.c_per_mile;
  opts.theta = ThetaSpec::parse(c.theta);
  opts.hours = c.hours;
  opts.lambda_lower = c.lambda_lower;
  opts.seed = c.seed;
  const TypedInstanceBundle b = build_bundle(trips, opts);
  if (!c.bundle_out.empty()) save_bundle(c.bundle_out, b);
  std::string text;
  switch (out.format) {
    case Format::Json: text = bundle_to_json(b); break;
    case Format::Csv: {
      text = "type,count_per_hour,theta,solo_cost,lambda_upper\n";
      for (std::size_t i = 0; i < b.matching.size(); ++i) {
        text += std::to_string(i) + "," + format_number(b.counts[i]) + "," + format_number(b.matching.theta[i]) + "," +
                format_number(b.matching.solo_cost[i]) + "," + format_number(b.matching.lambda_upper[i]) + "\n";
      }
      break;
    }
    case Format::Table: {
      TextTable t({"type", "per_hour", "theta", "solo_cost", "origin", "destination"});
      for (std::size_t i = 0; i < b.matching.size(); ++i) {
        const auto& p = b.centers[i];
        t.add({std::to_string(i), num(b.counts[i]), num(b.matching.theta[i]), num(b.matching.solo_cost[i]),
               "(" + num(p[0]) + "," + num(p[1]) + ")", "(" + num(p[2]) + "," + num(p[3]) + ")"});
      }
      text = std::to_string(trips.size()) + " trips -> " + std::to_string(b.matching.size()) + " types\n\n" + t.str();
      break;
    }
  }
  emit(out, "bundle", text);
  return kOk;
}

int run_synth(const SynthConfig& c, const OutputConfig& out) {
  SynthSpec spec;
  spec.trips = c.trips;
  spec.hotspots = c.hotspots;
  spec.spread = c.spread;
  spec.extent = c.extent;
  spec.hours = c.hours;
  const auto trips = synth_trips(spec, c.seed);
  if (!c.trips_out.empty()) {
    save_trips_csv(c.trips_out, trips);
    std::cout << "wrote " << trips.size() << " trips to " << c.trips_out << '\n';
    return kOk;
  }
  std::ostringstream os;
  write_trips_csv(os, trips);
  emit(out, "trips", os.str());
  return kOk;
}

int run_benchmark(const BenchmarkConfig& c, const OutputConfig& out) {
  std::vector<BenchmarkInstance> instances;
  if (!c.bundles.empty()) {
    for (const auto& path : c.bundles) {
      TypedInstanceBundle b = load_bundle(path);
      if (!b.demand) throw ValidationError("bundle " + path + " has no demand model");
      instances.push_back({std::filesystem::path(path).stem().string(), std::move(b.matching), std::move(*b.demand)});
    }
  } else {
    const ThetaSpec theta = ThetaSpec::parse(c.theta);
    for (std::size_t n : c.sizes) {
      for (double cpm : c.c_per_mile) {
        TypedInstanceBundle b = synthetic_bundle(n, cpm, theta, c.instance_seed);
        instances.push_back({"n" + std::to_string(n) + "_c" + format_number(cpm), std::move(b.matching),
                             std::move(*b.demand)});
      }
    }
  }
  std::vector<SolverConfig> solvers{SolverConfig::mm()};
  for (double s : c.steps) solvers.push_back(SolverConfig::pg(s));
  BenchmarkOptions opts;
  opts.pricing.eps = c.eps;
  opts.pricing.time_cap = c.time_cap;
  opts.pricing.delta_mm = c.delta_mm;
  opts.threads = c.threads;
  const BenchmarkTable t = fluidmatch::run_benchmark(instances, solvers, c.seeds, opts);
  std::string text;
  switch (out.format) {
    case Format::Json: text = to_json(t); break;
    case Format::Csv: text = to_csv(t); break;
    case Format::Table: text = table(t); break;
  }
  emit(out, "benchmark", text);
  bool capped = false, failed = false;
  for (const auto& cell : t.cells) {
    capped = capped || cell.time_capped;
    if (!cell.error.empty()) {
      failed = true;
      std::cerr << "cell " << cell.instance_id << "/" << to_string(cell.config.solver) << "/" << cell.seed
                << " failed: " << cell.error << '\n';
    }
  }
  return failed ? kSolverFailure : capped ? kTimeCapped : kOk;
}

int run_examples(const ExamplesConfig& c, const OutputConfig& out) {
  const ExampleReport r = run_reference_example(c.id, c.resolution);
  std::string text;
  switch (out.format) {
    case Format::Json: {
      ordered_json j;
      j["id"] = r.id;
      j["title"] = r.title;
      j["pass"] = r.pass();
      j["checks"] = ordered_json::array();
      for (const auto& k : r.checks) {
        j["checks"].push_back({{"name", k.name}, {"value", k.value}, {"expected", k.expected}, {"pass", k.pass}});
      }
      j["notes"] = r.notes;
      text = j.dump(2);
      break;
    }
    case Format::Csv: {
      text = "check,value,expected,result\n";
      for (const auto& k : r.checks) {
        text += "\"" + k.name + "\"," + format_number(k.value) + ",\"" + k.expected + "\"," + (k.pass ? "PASS" : "FAIL") + "\n";
      }
      break;
    }
    case Format::Table: {
      std::ostringstream os;
      os << "example " << r.id << ": " << r.title << "\n";
      TextTable t({"", "check", "value", "expected"});
      for (const auto& k : r.checks) t.add({k.pass ? "PASS" : "FAIL", k.name, num(k.value), k.expected});
      os << t.str();
      for (const auto& n : r.notes) os << "  " << n << "\n";
      text = os.str();
      break;
    }
  }
  emit(out, "example" + std::to_string(r.id), text);
  return r.pass() ? kOk : kSolverFailure;
}

}  // namespace cli
