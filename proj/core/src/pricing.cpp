#include "fluidmatch/pricing.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <string>

#include "fluidmatch/error.hpp"

namespace fluidmatch {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

void check_demand(const MatchingInstance& instance, const DemandModel& demand) {
  if (demand.size() != instance.size()) {
    throw ValidationError("demand model has " + std::to_string(demand.size()) + " types, instance has " +
                          std::to_string(instance.size()));
  }
}

double revenue(const DemandModel& demand, std::span<const double> lambda) {
  double total = 0.0;
  for (std::size_t i = 0; i < lambda.size(); ++i) total += demand.revenue(i, lambda[i]);
  return total;
}

// Maximizer over [lo, hi] of a concave function with derivative `slope`.
template <class F>
double bisect_concave(F slope, double lo, double hi) {
  if (slope(lo) <= 0.0) return lo;
  if (slope(hi) >= 0.0) return hi;
  while (hi - lo > 1e-10) {
    const double mid = 0.5 * (lo + hi);
    if (slope(mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

std::string_view to_string(PricingSolver s) { return s == PricingSolver::MM ? "MM" : "PG"; }

double objective_g(const MatchingInstance& instance, const DemandModel& demand, std::span<const double> lambda) {
  check_demand(instance, demand);
  return revenue(demand, lambda) - cost(instance, lambda);
}

std::vector<double> supergradient(const MatchingInstance& instance, std::span<const double> lambda, double rho,
                                  const FluidSolution& solution) {
  const std::size_t n = instance.size();
  if (lambda.size() != n || solution.y.size() != n || solution.gamma.size() != n || solution.eta.rows() != n) {
    throw ValidationError("supergradient inputs disagree on the number of types");
  }
  std::vector<double> v = cost_sensitivity(solution);
  for (std::size_t i = 0; i < n; ++i) v[i] -= rho * lambda[i];
  return v;
}

double default_delta_mm(const MatchingInstance& instance) {
  double mean_cost = 0.0;
  for (double c : instance.solo_cost) mean_cost += c;
  mean_cost /= static_cast<double>(instance.size());
  double norm = 0.0;
  for (double u : instance.lambda_upper) norm += u * u;
  return 0.1 * mean_cost / std::sqrt(norm);
}

double surrogate(const DemandModel& demand, std::span<const double> lambda_t, const FluidSolution& solution_t,
                 double rho, std::span<const double> lambda) {
  const std::vector<double> s = cost_sensitivity(solution_t);
  double q = revenue(demand, lambda) - solution_t.objective;
  for (std::size_t i = 0; i < lambda.size(); ++i) {
    const double v = s[i] - rho * lambda_t[i];
    q -= v * (lambda[i] - lambda_t[i]) + 0.5 * rho * (lambda[i] * lambda[i] - lambda_t[i] * lambda_t[i]);
  }
  return q;
}

std::vector<double> maximize_surrogate_bisection(const MatchingInstance& instance, const DemandModel& demand,
                                                 std::span<const double> lambda_t, const FluidSolution& solution_t,
                                                 double rho) {
  const std::vector<double> s = cost_sensitivity(solution_t);
  std::vector<double> next(lambda_t.size());
  for (std::size_t i = 0; i < next.size(); ++i) {
    auto slope = [&](double l) { return demand.marginal_revenue(i, l) - s[i] + rho * (lambda_t[i] - l); };
    next[i] = bisect_concave(slope, instance.lambda_lower[i], instance.lambda_upper[i]);
  }
  return next;
}

std::vector<double> maximize_surrogate(const MatchingInstance& instance, const DemandModel& demand,
                                       std::span<const double> lambda_t, const FluidSolution& solution_t, double rho) {
  check_demand(instance, demand);
  if (demand.kind() != DemandModel::Kind::Linear) {
    return maximize_surrogate_bisection(instance, demand, lambda_t, solution_t, rho);
  }
  const std::vector<double> s = cost_sensitivity(solution_t);
  std::vector<double> next(lambda_t.size());
  for (std::size_t i = 0; i < next.size(); ++i) {
    const double l = demand.solo_length()[i];
    const double top = demand.max_rate()[i];
    const double denom = 2.0 * l + rho * top;
    double target;
    if (denom > 0.0) {
      target = top * (l - s[i] + rho * lambda_t[i]) / denom;
    } else {
      // Zero length and rho = 0: the surrogate is linear in this coordinate.
      target = s[i] > 0.0 ? instance.lambda_lower[i] : s[i] < 0.0 ? instance.lambda_upper[i] : lambda_t[i];
    }
    next[i] = std::clamp(target, instance.lambda_lower[i], instance.lambda_upper[i]);
  }
  return next;
}

std::vector<double> ascent_direction(const DemandModel& demand, std::span<const double> lambda,
                                     const FluidSolution& solution) {
  std::vector<double> d = cost_sensitivity(solution);
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = demand.marginal_revenue(i, lambda[i]) - d[i];
  return d;
}

PricingResult mm_solve(const MatchingInstance& instance, const DemandModel& demand, std::span<const double> lambda0,
                       const PricingOptions& options) {
  check_demand(instance, demand);
  check_rates(instance, lambda0);
  if (!(options.eps > 0.0)) throw ValidationError("eps must be > 0");
  const double delta = options.delta_mm > 0.0 ? options.delta_mm : default_delta_mm(instance);
  const auto t0 = Clock::now();

  PricingResult res;
  res.solver = PricingSolver::MM;
  std::vector<double> lambda(lambda0.begin(), lambda0.end());
  FluidSolution sol = solve_fluid_lp(instance, lambda);
  ++res.lp_solves;
  double g = revenue(demand, lambda) - sol.objective;
  res.trajectory.push_back(g);

  while (res.iterations < options.max_iterations) {
    if (res.iterations > 0 && seconds_since(t0) > options.time_cap) {
      res.time_capped = true;
      break;
    }
    double rho = 0.0;
    std::vector<double> next;
    FluidSolution next_sol;
    double next_g;
    for (;;) {
      next = maximize_surrogate(instance, demand, lambda, sol, rho);
      next_sol = solve_fluid_lp(instance, next);
      ++res.lp_solves;
      next_g = revenue(demand, next) - next_sol.objective;
      // Rounding in the LP can cost a few ulps of g; anything beyond is a
      // genuine failure of the minorizer.
      if (next_g >= g - 1e-12 * std::max(1.0, std::abs(g)) || next == lambda) break;
      rho += delta;
      if (rho > options.rho_cap) {
        throw SolverError("MM curvature ladder exceeded rho cap " + std::to_string(options.rho_cap) +
                          " at iteration " + std::to_string(res.iterations) + " (g = " + std::to_string(g) +
                          ", candidate g = " + std::to_string(next_g) + ")");
      }
    }
    ++res.iterations;
    res.rho_final = rho;
    res.rho_max = std::max(res.rho_max, rho);
    const double change = next_g - g;
    lambda = std::move(next);
    sol = std::move(next_sol);
    g = next_g;
    res.trajectory.push_back(g);
    if (std::abs(change) < options.eps) {
      res.converged = true;
      break;
    }
  }

  res.lambda_star = lambda;
  res.objective = g;
  res.wall_time = seconds_since(t0);
  return res;
}

PricingResult pg_solve(const MatchingInstance& instance, const DemandModel& demand, std::span<const double> lambda0,
                       double step0, const PricingOptions& options) {
  check_demand(instance, demand);
  check_rates(instance, lambda0);
  if (!(options.eps > 0.0)) throw ValidationError("eps must be > 0");
  if (!(step0 > 0.0)) throw ValidationError("step0 must be > 0");
  const auto t0 = Clock::now();

  PricingResult res;
  res.solver = PricingSolver::PG;
  res.stepsize_initial = step0;
  double step = step0;
  std::vector<double> lambda(lambda0.begin(), lambda0.end());
  FluidSolution sol = solve_fluid_lp(instance, lambda);
  ++res.lp_solves;
  double g = revenue(demand, lambda) - sol.objective;
  res.trajectory.push_back(g);

  while (res.iterations < options.max_iterations) {
    if (res.iterations > 0 && seconds_since(t0) > options.time_cap) {
      res.time_capped = true;
      break;
    }
    const std::vector<double> dir = ascent_direction(demand, lambda, sol);
    std::vector<double> next(lambda.size());
    for (std::size_t i = 0; i < next.size(); ++i) {
      next[i] = std::clamp(lambda[i] + step * dir[i], instance.lambda_lower[i], instance.lambda_upper[i]);
    }
    FluidSolution next_sol = solve_fluid_lp(instance, next);
    ++res.lp_solves;
    const double next_g = revenue(demand, next) - next_sol.objective;
    ++res.iterations;
    if (next_g < g) step *= 0.5;
    const double change = next_g - g;
    lambda = std::move(next);
    sol = std::move(next_sol);
    g = next_g;
    res.trajectory.push_back(g);
    if (std::abs(change) < options.eps) {
      res.converged = true;
      break;
    }
  }

  res.lambda_star = lambda;
  res.objective = g;
  res.stepsize_final = step;
  res.wall_time = seconds_since(t0);
  return res;
}

}  // namespace fluidmatch
