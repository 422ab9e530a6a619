#pragma once

#include <vector>

#include "fluidmatch/demand.hpp"
#include "fluidmatch/instance.hpp"

namespace fluidmatch {

/// Small instances with known curvature pathologies. Every box is [1e-3, 1e4]
/// per type unless noted.

/// theta = (1, 2), unit solo costs, c(1,2) = 1.01: smooth but not concave near
/// (0.1, 0.1).
MatchingInstance nonconcave_two_type();

/// Four equally patient types (theta = 1) with a hand-picked cost matrix:
/// smooth but not concave near (0.8, 1.2, 1.2, 0.01).
MatchingInstance nonconcave_equal_patience();

/// theta = (1, 8), unit solo costs, c(1,2) = 1.05: weakly concave only above
/// lambda_2 ~ 18.58, with a convex kink just below.
MatchingInstance threshold_kink_two_type();

/// theta = (1, 8), every cost 1 (perfect pooling efficiency): convex kinks for
/// arbitrarily large rates. Box [1e-3, 1e5].
MatchingInstance perfect_efficiency_two_type();

/// Equal patience 0.3, solo cost 1.1, c(1,2) = 1.65, box [0.01, 1]^2, and
/// prices p_i = 1 - lambda_i: the profit surface has several local maxima.
struct PricingLandscape {
  MatchingInstance matching;
  DemandModel demand;
};
PricingLandscape multimodal_pricing();

}  // namespace fluidmatch
