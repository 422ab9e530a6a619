#pragma once

#include <span>
#include <string_view>

#include "fluidmatch/fluid_lp.hpp"
#include "fluidmatch/instance.hpp"

namespace fluidmatch {

// Closed-form optima for one and two agent types. The returned FluidSolution
// carries no duals (gamma and eta are empty) and a basis_tag naming the case.

FluidSolution solve_single_type(double theta, double solo_cost, double lambda);

/// Optimal-solution regime of a two-type instance with theta_1 <= theta_2.
enum class TwoTypeCase {
  NoCross,       // each type only matches with itself
  FullyMatched,  // every patience bound binds
  NoSelfMatch1,  // the more patient type never matches with itself
  Y2Zero,        // every type-2 agent is matched passively by type 1
};

std::string_view to_string(TwoTypeCase c);

struct TwoTypeIndicators {
  double delta1 = 0.0;
  double delta2 = 0.0;
  double delta3 = 0.0;
};

/// Requires N = 2 and theta_1 <= theta_2.
TwoTypeIndicators two_type_indicators(const MatchingInstance& instance, std::span<const double> lambda);

/// delta1 <= 0 -> NoCross; else delta2 < 0 -> FullyMatched; else delta3 < 0 ->
/// NoSelfMatch1; else Y2Zero.
TwoTypeCase classify(const TwoTypeIndicators& d);

struct TwoTypeSolution {
  TwoTypeCase case_id = TwoTypeCase::NoCross;
  TwoTypeIndicators indicators;
  /// True when theta_1 > theta_2 and the types were swapped to compute the
  /// case; indicators refer to the swapped labelling, the solution does not.
  bool relabeled = false;
  FluidSolution solution;
};

TwoTypeSolution solve_two_type(const MatchingInstance& instance, std::span<const double> lambda);

enum class EqualPatienceCase { Decoupled, Pooled };

std::string_view to_string(EqualPatienceCase c);

struct EqualPatienceSolution {
  EqualPatienceCase case_id = EqualPatienceCase::Decoupled;
  double delta1 = 0.0;
  /// Cost when each type matches only with itself, and when all bounds bind.
  double decoupled_cost = 0.0;
  double pooled_cost = 0.0;
  FluidSolution solution;
};

/// Requires N = 2 and theta_1 == theta_2.
EqualPatienceSolution solve_two_type_equal_patience(const MatchingInstance& instance,
                                                    std::span<const double> lambda);

}  // namespace fluidmatch
