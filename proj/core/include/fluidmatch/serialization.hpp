#pragma once

#include <string>

#include "fluidmatch/benchmark_harness.hpp"
#include "fluidmatch/closed_form.hpp"
#include "fluidmatch/concavity.hpp"
#include "fluidmatch/fluid_lp.hpp"
#include "fluidmatch/pricing.hpp"

namespace fluidmatch {

/// Shortest text that parses back to the same double; "nan", "inf", "-inf"
/// for non-finite values. JSON output writes non-finite values as null.
std::string format_number(double v);

/// Matrices are arrays of rows. Every to_json returns a pretty-printed object.
std::string to_json(const FluidSolution& s);
std::string to_json(const TwoTypeSolution& s);
std::string to_json(const EqualPatienceSolution& s);
std::string to_json(const ConcavityCertificate& c);
std::string to_json(const HessianEstimate& h);
std::string to_json(const OneSidedPartials& p);
std::string to_json(const MidpointReport& r);
std::string to_json(const RhoSearchResult& r);
std::string to_json(const PricingResult& r);
std::string to_json(const BenchmarkTable& t);

/// Long format `field,i,j,value`; scalar rows leave i and j empty.
std::string to_csv(const FluidSolution& s);
/// `iteration,objective` followed by `lambda_star` rows as `lambda,i,value`.
std::string to_csv(const PricingResult& r);
/// Header `instance_id,solver,step0,seed,time_s,iters,objective`. Failed
/// cells carry objective nan.
std::string to_csv(const BenchmarkTable& t);

FluidSolution fluid_solution_from_json(const std::string& text);

}  // namespace fluidmatch
