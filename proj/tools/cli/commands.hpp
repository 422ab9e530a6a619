#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace cli {

enum class Format { Json, Csv, Table };

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kBadInput = 2;
inline constexpr int kSolverFailure = 3;
inline constexpr int kTimeCapped = 4;

struct OutputConfig {
  Format format = Format::Table;
  std::string out_dir;  // empty: stdout only
};

struct SolveConfig {
  std::string bundle;
  std::vector<double> lambda;  // empty: upper end of the box
};

struct CertifyConfig {
  std::string bundle;
};

struct DiagnoseConfig {
  std::string mode;  // hessian | partials | probe
  std::string bundle;
  std::vector<double> lambda;
  std::size_t coord = 0;
  double step = 0.0;
  std::size_t samples = 10000;
  std::optional<double> rho;  // unset: doubling search
  std::uint64_t seed = 0;
};

struct PriceConfig {
  std::string bundle;
  std::string solver = "mm";
  std::vector<double> lambda0;  // empty: seeded uniform draw
  double eps = 1e-3;
  double time_cap = 1200.0;
  double step0 = 1.0;
  double delta_mm = 0.0;
  double rho_cap = 1e6;
  std::uint64_t seed = 0;
};

struct IngestConfig {
  std::string trips;
  std::string bundle_out;
  std::size_t n_types = 10;
  double c_per_mile = 0.9;
  std::string theta = "equal:1";
  double hours = 1.0;
  double lambda_lower = 1e-3;
  std::uint64_t seed = 0;
};

struct SynthConfig {
  std::string trips_out;
  std::size_t trips = 1000;
  std::size_t hotspots = 5;
  double spread = 0.5;
  double extent = 20.0;
  double hours = 1.0;
  std::uint64_t seed = 0;
};

struct BenchmarkConfig {
  std::vector<std::string> bundles;  // empty: synthetic instances
  std::vector<std::size_t> sizes{10, 50};
  std::vector<double> c_per_mile{0.7, 0.9, 1.1};
  std::string theta = "equal:1";
  std::vector<std::uint64_t> seeds{0, 1, 2};
  std::vector<double> steps{1.0, 10.0, 100.0};
  double eps = 1e-3;
  double time_cap = 1200.0;
  double delta_mm = 0.0;
  unsigned threads = 0;
  std::uint64_t instance_seed = 0;
};

struct ExamplesConfig {
  int id = 1;
  std::size_t resolution = 200;
};

int run_solve(const SolveConfig& c, const OutputConfig& out);
int run_classify(const SolveConfig& c, const OutputConfig& out);
int run_certify(const CertifyConfig& c, const OutputConfig& out);
int run_diagnose(const DiagnoseConfig& c, const OutputConfig& out);
int run_price(const PriceConfig& c, const OutputConfig& out);
int run_ingest(const IngestConfig& c, const OutputConfig& out);
int run_synth(const SynthConfig& c, const OutputConfig& out);
int run_benchmark(const BenchmarkConfig& c, const OutputConfig& out);
int run_examples(const ExamplesConfig& c, const OutputConfig& out);

// Prints `text` to stdout and, with an output directory, also writes it to
// out_dir/name.
void emit(const OutputConfig& out, const std::string& name, const std::string& text);
std::string extension(Format f);

}  // namespace cli
