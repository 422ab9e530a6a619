#pragma once

#include <span>
#include <string>
#include <vector>

#include "fluidmatch/instance.hpp"
#include "fluidmatch/matrix.hpp"
#include "fluidmatch/simplex.hpp"

namespace fluidmatch {

/// Optimal matching flows at a given arrival-rate vector.
///
/// x(i, j) is the rate at which an active (earlier) type-i agent is matched
/// with a passive (later) type-j agent; y(i) is the rate of type-i agents that
/// leave unmatched. gamma holds the duals of the flow-balance rows and eta(i, j)
/// the duals of the patience rows `theta_i x(i,j) <= lambda_j y(i)`. Duals are
/// simplex multipliers of the equality form, so eta <= 0 and
///     d cost / d lambda_k = gamma_k + sum_i y(i) * eta(i, k)
/// wherever the optimal basis is locally unique.
struct FluidSolution {
  Matrix x;
  std::vector<double> y;
  double objective = 0.0;
  std::vector<double> gamma;
  Matrix eta;
  std::string basis_tag;
};

/// Column and row layout of the equality-form LP for N types:
///   columns [0, N^2)          x(i, j) at i*N + j
///           [N^2, N^2 + N)    y(i)
///           [N^2 + N, 2N^2+N) slack delta(i, j) at N^2 + N + i*N + j
///   rows    [0, N)            flow balance of type i
///           [N, N + N^2)      patience row (i, j) at N + i*N + j:
///                             theta_i x(i,j) + delta(i,j) - lambda_j y(i) = 0
struct FluidLayout {
  int n;
  int x(int i, int j) const { return i * n + j; }
  int y(int i) const { return n * n + i; }
  int slack(int i, int j) const { return n * n + n + i * n + j; }
  int flow_row(int i) const { return i; }
  int patience_row(int i, int j) const { return n + i * n + j; }
  int num_cols() const { return 2 * n * n + n; }
  int num_rows() const { return n * n + n; }
};

StandardFormLP build_standard_form(const MatchingInstance& instance, std::span<const double> lambda);

/// The basis in which nobody is matched: y = lambda, delta(i,j) = lambda_j lambda_i.
std::vector<int> unmatched_basis(int n);

FluidSolution solve_fluid_lp(const MatchingInstance& instance, std::span<const double> lambda,
                             const SimplexOptions& options = {});

/// Optimal cost per unit time.
double cost(const MatchingInstance& instance, std::span<const double> lambda);

/// Largest violations of the optimality conditions of a FluidSolution, each
/// scaled by the largest coefficient it involves.
struct SolutionCheck {
  double flow_residual = 0.0;
  double patience_violation = 0.0;
  double negativity = 0.0;
  double objective_mismatch = 0.0;
  double dual_infeasibility = 0.0;
  double complementary_slackness = 0.0;

  double worst() const;
};

SolutionCheck check_solution(const MatchingInstance& instance, std::span<const double> lambda,
                             const FluidSolution& solution);

/// gamma_i + sum_j y_j eta(j, i): the derivative of cost along lambda_i on a
/// smooth point, a supergradient component in general.
std::vector<double> cost_sensitivity(const FluidSolution& solution);

}  // namespace fluidmatch
