#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "fluidmatch/demand.hpp"
#include "fluidmatch/fluid_lp.hpp"
#include "fluidmatch/instance.hpp"

namespace fluidmatch {

enum class PricingSolver { MM, PG };

std::string_view to_string(PricingSolver s);

struct PricingOptions {
  /// Stop once |g(next) - g(current)| < eps.
  double eps = 1e-3;
  /// Wall-clock budget in seconds, checked before each outer iteration.
  double time_cap = 1200.0;
  /// rho increment after a rejected MM step; <= 0 selects default_delta_mm().
  double delta_mm = 0.0;
  /// A rejected MM step that would push rho beyond this throws SolverError.
  double rho_cap = 1e6;
  long max_iterations = 100000;
};

struct PricingResult {
  PricingSolver solver = PricingSolver::MM;
  std::vector<double> lambda_star;
  double objective = 0.0;
  /// g at lambda0 followed by g after every accepted iteration.
  std::vector<double> trajectory;
  long iterations = 0;
  long lp_solves = 0;
  /// rho of the last accepted MM step and the largest rho any step needed.
  double rho_final = 0.0;
  double rho_max = 0.0;
  /// PG only.
  double stepsize_initial = 0.0;
  double stepsize_final = 0.0;
  double wall_time = 0.0;
  bool converged = false;
  bool time_capped = false;
};

/// Revenue minus matching cost.
double objective_g(const MatchingInstance& instance, const DemandModel& demand, std::span<const double> lambda);

/// gamma_i + sum_j y_j eta(j, i) - rho lambda_i.
std::vector<double> supergradient(const MatchingInstance& instance, std::span<const double> lambda, double rho,
                                  const FluidSolution& solution);

/// 0.1 * mean solo cost / ||lambda_upper||.
double default_delta_mm(const MatchingInstance& instance);

/// Minorizer of g built at lambda_t with curvature rho:
///   Q(l) = R(l) - c(lambda_t) - v.(l - lambda_t) - rho (||l||^2 - ||lambda_t||^2) / 2,
/// where v is the supergradient at lambda_t with that rho.
double surrogate(const DemandModel& demand, std::span<const double> lambda_t, const FluidSolution& solution_t,
                 double rho, std::span<const double> lambda);

/// argmax of the surrogate over the box. Separable: closed form for linear
/// demand, derivative bisection to 1e-10 otherwise.
std::vector<double> maximize_surrogate(const MatchingInstance& instance, const DemandModel& demand,
                                       std::span<const double> lambda_t, const FluidSolution& solution_t,
                                       double rho);

/// Same maximization by derivative bisection regardless of the demand kind.
std::vector<double> maximize_surrogate_bisection(const MatchingInstance& instance, const DemandModel& demand,
                                                 std::span<const double> lambda_t, const FluidSolution& solution_t,
                                                 double rho);

/// Marginal revenue minus the rho = 0 supergradient of the cost.
std::vector<double> ascent_direction(const DemandModel& demand, std::span<const double> lambda,
                                     const FluidSolution& solution);

PricingResult mm_solve(const MatchingInstance& instance, const DemandModel& demand, std::span<const double> lambda0,
                       const PricingOptions& options = {});

/// Projected gradient ascent; the step halves after every iteration that
/// lowers g, and that iterate is kept.
PricingResult pg_solve(const MatchingInstance& instance, const DemandModel& demand, std::span<const double> lambda0,
                       double step0, const PricingOptions& options = {});

}  // namespace fluidmatch
