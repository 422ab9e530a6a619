#include "examples.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fluidmatch/concavity.hpp"
#include "fluidmatch/error.hpp"
#include "fluidmatch/landscape.hpp"
#include "fluidmatch/reference_instances.hpp"
#include "tables.hpp"

namespace cli {

using namespace fluidmatch;

bool ExampleReport::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const ExampleCheck& c) { return c.pass; });
}

namespace {

ExampleCheck within(std::string name, double value, double target, double tol) {
  return {std::move(name), value, num(target) + " +/- " + num(tol), std::abs(value - target) <= tol};
}

ExampleCheck in_range(std::string name, double value, double lo, double hi) {
  return {std::move(name), value, "[" + num(lo) + ", " + num(hi) + "]", value >= lo && value <= hi};
}

ExampleCheck at_least(std::string name, double value, double lo) {
  return {std::move(name), value, ">= " + num(lo), value >= lo};
}

void hessian_example(ExampleReport& r, const MatchingInstance& inst, const std::vector<double>& lambda, double lo,
                     double hi) {
  const HessianEstimate h = numerical_hessian(inst, lambda);
  r.checks.push_back(in_range("top eigenvalue at (" + join(lambda) + ")", h.eigenvalues.back(), lo, hi));
  r.checks.push_back({"smooth", h.smooth ? 1.0 : 0.0, "1", h.smooth});
  r.notes.push_back("eigenvalues " + join(h.eigenvalues));
}

ExampleReport threshold_kink() {
  ExampleReport r{3, "kink just below the weak-concavity threshold, theta = (1, 8), c12 = 1.05", {}, {}};
  const MatchingInstance inst = threshold_kink_two_type();
  const ConcavityCertificate cert = certify(inst);
  r.checks.push_back(within("tau1", cert.tau1.value_or(NAN), 4.2, 1e-9));
  r.checks.push_back(within("tau2", cert.tau2.value_or(NAN), 10.44, 1e-9));
  double bound = NAN;
  for (const auto& c : cert.checks) {
    if (c.rule == ConcavityRule::TwoTypeTauThreshold && !c.required_lower_bounds.empty()) {
      bound = c.required_lower_bounds.back();
    }
  }
  r.checks.push_back(within("lambda_2 threshold", bound, 18.57, 0.01));
  const std::vector<double> at{19.5, 18.5};
  const OneSidedPartials p = one_sided_partials(inst, at, 0);
  r.checks.push_back(within("left partial at (19.5,18.5)", p.left, 0.49986, 1e-4));
  r.checks.push_back(within("right partial at (19.5,18.5)", p.right, 0.5, 1e-6));
  const OneSidedPartials fine = one_sided_partials(inst, at, 0, 1e-5);
  r.notes.push_back("step 1e-5: left " + num(fine.left) + ", right " + num(fine.right) +
                    (fine.violation ? ", convex kink" : ""));
  return r;
}

ExampleReport perfect_efficiency() {
  ExampleReport r{4, "convex kinks at every scale, theta = (1, 8), all costs 1", {}, {}};
  const MatchingInstance inst = perfect_efficiency_two_type();
  const double left[] = {0.43574, 0.48837, 0.49876, 0.49988};
  double l1 = 11.0, l2 = 10.0;
  for (double target : left) {
    const std::vector<double> at{l1, l2};
    const OneSidedPartials p = one_sided_partials(inst, at, 0);
    r.checks.push_back(within("left partial at (" + join(at) + ")", p.left, target, 1e-4));
    r.checks.push_back(within("right partial at (" + join(at) + ")", p.right, 0.5, 1e-6));
    l1 = (l1 - 1.0) * 10.0 + 1.0;
    l2 *= 10.0;
  }
  const ConcavityCertificate cert = certify(inst);
  r.notes.push_back("certificate " + std::string(to_string(cert.verdict)) +
                    (cert.witness ? " at " + join(cert.witness->lambda) : ""));
  return r;
}

ExampleReport multimodal(std::size_t resolution) {
  ExampleReport r{5, "profit over [0.01, 1]^2, theta = 0.3, c = 1.1, c12 = 1.65, p = 1 - lambda", {}, {}};
  const PricingLandscape land = multimodal_pricing();
  const ObjectiveGrid grid = scan_objective(land.matching, land.demand, resolution);
  const auto maxima = strict_local_maxima(grid);
  const auto kinks = locate_kinks(land.matching, land.demand, grid);
  r.checks.push_back(at_least("strict local maxima", static_cast<double>(maxima.size()), 2));
  r.checks.push_back(at_least("kinks", static_cast<double>(kinks.size()), 1));
  for (const auto& m : maxima) r.notes.push_back("local max g(" + join(m.lambda) + ") = " + num(m.value));
  // Report the kink closest to the diagonal: it separates the two interior peaks.
  auto diag = std::min_element(kinks.begin(), kinks.end(), [](const Kink& a, const Kink& b) {
    return std::abs(a.lambda[0] - a.lambda[1]) < std::abs(b.lambda[0] - b.lambda[1]);
  });
  if (diag != kinks.end()) {
    r.notes.push_back("kink at (" + join(diag->lambda) + ") along lambda_" + std::to_string(diag->coord + 1) +
                      ": left " + num(diag->left) + ", right " + num(diag->right));
  }
  return r;
}

}  // namespace

ExampleReport run_reference_example(int id, std::size_t resolution) {
  switch (id) {
    case 1: {
      ExampleReport r{1, "non-concave cost, theta = (1, 2), c12 = 1.01", {}, {}};
      hessian_example(r, nonconcave_two_type(), {0.1, 0.1}, 0.02, 0.04);
      return r;
    }
    case 2: {
      ExampleReport r{2, "non-concave cost, four types with equal patience", {}, {}};
      hessian_example(r, nonconcave_equal_patience(), {0.80, 1.20, 1.20, 0.01}, 0.03, 0.05);
      return r;
    }
    case 3: return threshold_kink();
    case 4: return perfect_efficiency();
    case 5: return multimodal(resolution);
    default: throw ValidationError("example id must be 1..5, got " + std::to_string(id));
  }
}

}  // namespace cli
