#include "fluidmatch/fluid_lp.hpp"

#include <algorithm>
#include <cmath>

#include "fluidmatch/error.hpp"

namespace fluidmatch {

StandardFormLP build_standard_form(const MatchingInstance& instance, std::span<const double> lambda) {
  check_rates(instance, lambda);
  const int n = static_cast<int>(instance.size());
  const FluidLayout at{n};

  StandardFormLP lp;
  lp.num_rows = at.num_rows();
  lp.cost.assign(at.num_cols(), 0.0);
  lp.rhs.assign(at.num_rows(), 0.0);
  lp.columns.resize(at.num_cols());

  for (int i = 0; i < n; ++i) {
    lp.rhs[at.flow_row(i)] = lambda[i];
    for (int j = 0; j < n; ++j) {
      auto& col = lp.columns[at.x(i, j)].entries;
      lp.cost[at.x(i, j)] = instance.pair_cost(i, j);
      if (i == j) {
        col.emplace_back(at.flow_row(i), 2.0);
      } else {
        col.emplace_back(std::min(at.flow_row(i), at.flow_row(j)), 1.0);
        col.emplace_back(std::max(at.flow_row(i), at.flow_row(j)), 1.0);
      }
      // theta_i = 0 keeps the row; x(i,j) simply has no entry there.
      if (instance.theta[i] != 0.0) col.emplace_back(at.patience_row(i, j), instance.theta[i]);
    }
  }
  for (int i = 0; i < n; ++i) {
    auto& col = lp.columns[at.y(i)].entries;
    lp.cost[at.y(i)] = instance.solo_cost[i];
    col.emplace_back(at.flow_row(i), 1.0);
    for (int j = 0; j < n; ++j) col.emplace_back(at.patience_row(i, j), -lambda[j]);
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) lp.columns[at.slack(i, j)].entries.emplace_back(at.patience_row(i, j), 1.0);
  }
  return lp;
}

std::vector<int> unmatched_basis(int n) {
  const FluidLayout at{n};
  std::vector<int> basis;
  basis.reserve(at.num_rows());
  for (int i = 0; i < n; ++i) basis.push_back(at.y(i));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) basis.push_back(at.slack(i, j));
  }
  return basis;
}

FluidSolution solve_fluid_lp(const MatchingInstance& instance, std::span<const double> lambda,
                             const SimplexOptions& options) {
  const StandardFormLP lp = build_standard_form(instance, lambda);
  const int n = static_cast<int>(instance.size());
  const FluidLayout at{n};
  const std::vector<int> start = unmatched_basis(n);

  const SimplexResult res = solve_simplex(lp, start, options);
  switch (res.status) {
    case SimplexStatus::Optimal:
      break;
    case SimplexStatus::Unbounded:
      throw SolverError("fluid LP reported unbounded; costs are positive so this is an internal error");
    case SimplexStatus::IterationLimit:
      throw SolverError("fluid LP hit the pivot limit after " + std::to_string(res.iterations) +
                        " iterations");
  }

  FluidSolution sol;
  sol.x = Matrix(n, n);
  sol.eta = Matrix(n, n);
  sol.y.resize(n);
  sol.gamma.resize(n);
  for (int i = 0; i < n; ++i) {
    sol.y[i] = res.primal[at.y(i)];
    sol.gamma[i] = res.duals[at.flow_row(i)];
    for (int j = 0; j < n; ++j) {
      sol.x(i, j) = res.primal[at.x(i, j)];
      sol.eta(i, j) = res.duals[at.patience_row(i, j)];
    }
  }
  sol.objective = res.objective;
  sol.basis_tag = basis_digest(res.basis);
  return sol;
}

double cost(const MatchingInstance& instance, std::span<const double> lambda) {
  return solve_fluid_lp(instance, lambda).objective;
}

double SolutionCheck::worst() const {
  return std::max({flow_residual, patience_violation, negativity, objective_mismatch,
                   dual_infeasibility, complementary_slackness});
}

SolutionCheck check_solution(const MatchingInstance& instance, std::span<const double> lambda,
                             const FluidSolution& s) {
  const std::size_t n = instance.size();
  SolutionCheck chk;
  double lam_max = 1.0;
  double cost_max = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    lam_max = std::max(lam_max, lambda[i]);
    cost_max = std::max(cost_max, instance.solo_cost[i]);
    for (std::size_t j = 0; j < n; ++j) cost_max = std::max(cost_max, instance.pair_cost(i, j));
  }

  double obj = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double flow = s.y[i];
    for (std::size_t j = 0; j < n; ++j) flow += s.x(j, i) + s.x(i, j);
    chk.flow_residual = std::max(chk.flow_residual, std::abs(flow - lambda[i]) / lam_max);
    chk.negativity = std::max(chk.negativity, -s.y[i] / lam_max);
    obj += instance.solo_cost[i] * s.y[i];
    for (std::size_t j = 0; j < n; ++j) {
      const double slack = lambda[j] * s.y[i] - instance.theta[i] * s.x(i, j);
      const double scale = lam_max * std::max(1.0, lam_max + instance.theta[i]);
      chk.patience_violation = std::max(chk.patience_violation, -slack / scale);
      chk.negativity = std::max(chk.negativity, -s.x(i, j) / lam_max);
      obj += instance.pair_cost(i, j) * s.x(i, j);

      // Reduced costs of x(i,j) and delta(i,j); complementary slackness of both.
      double rc_x = instance.pair_cost(i, j) - instance.theta[i] * s.eta(i, j);
      rc_x -= (i == j) ? 2.0 * s.gamma[i] : s.gamma[i] + s.gamma[j];
      const double rc_delta = -s.eta(i, j);
      chk.dual_infeasibility = std::max({chk.dual_infeasibility, -rc_x / cost_max, -rc_delta / cost_max});
      chk.complementary_slackness =
          std::max({chk.complementary_slackness, std::abs(rc_x * s.x(i, j)) / (cost_max * lam_max),
                    std::abs(rc_delta * slack) / (cost_max * lam_max * lam_max)});
    }
    double rc_y = instance.solo_cost[i] - s.gamma[i];
    for (std::size_t j = 0; j < n; ++j) rc_y += lambda[j] * s.eta(i, j);
    chk.dual_infeasibility = std::max(chk.dual_infeasibility, -rc_y / cost_max);
    chk.complementary_slackness =
        std::max(chk.complementary_slackness, std::abs(rc_y * s.y[i]) / (cost_max * lam_max));
  }
  chk.objective_mismatch = std::abs(obj - s.objective) / std::max(1.0, std::abs(s.objective));
  return chk;
}

std::vector<double> cost_sensitivity(const FluidSolution& s) {
  const std::size_t n = s.y.size();
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) {
    double acc = s.gamma[i];
    for (std::size_t j = 0; j < n; ++j) acc += s.y[j] * s.eta(j, i);
    v[i] = acc;
  }
  return v;
}

}  // namespace fluidmatch
