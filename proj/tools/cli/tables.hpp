#pragma once

#include <string>
#include <vector>

#include "fluidmatch/benchmark_harness.hpp"
#include "fluidmatch/closed_form.hpp"
#include "fluidmatch/concavity.hpp"
#include "fluidmatch/fluid_lp.hpp"
#include "fluidmatch/pricing.hpp"

namespace cli {

// Left-aligned columns padded to the widest cell.
class TextTable {
 public:
  explicit TextTable(std::vector<std::string> header) : rows_{std::move(header)} {}
  void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }
  std::string str() const;

 private:
  std::vector<std::vector<std::string>> rows_;
};

std::string num(double v);
std::string join(const std::vector<double>& v);

std::string table(const fluidmatch::FluidSolution& s);
std::string table(const fluidmatch::TwoTypeSolution& s);
std::string table(const fluidmatch::ConcavityCertificate& c);
std::string table(const fluidmatch::HessianEstimate& h);
std::string table(const fluidmatch::OneSidedPartials& p);
std::string table(const fluidmatch::MidpointReport& r);
std::string table(const fluidmatch::RhoSearchResult& r);
std::string table(const fluidmatch::PricingResult& r);
std::string table(const fluidmatch::BenchmarkTable& t);

}  // namespace cli
