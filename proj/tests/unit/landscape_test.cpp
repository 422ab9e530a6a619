#include <gtest/gtest.h>

#include <cmath>

#include "fluidmatch/error.hpp"
#include "fluidmatch/fluid_lp.hpp"
#include "fluidmatch/landscape.hpp"
#include "fluidmatch/reference_instances.hpp"

using namespace fluidmatch;

TEST(Landscape, GridCoversBoxAndMatchesPointEvaluations) {
  const PricingLandscape land = multimodal_pricing();
  const ObjectiveGrid g = scan_objective(land.matching, land.demand, 11);
  ASSERT_EQ(g.axis0.size(), 11u);
  EXPECT_EQ(g.axis0.front(), 0.01);
  EXPECT_EQ(g.axis1.back(), 1.0);
  const std::vector<double> at{g.axis0[3], g.axis1[7]};
  EXPECT_DOUBLE_EQ(g.values(3, 7), land.demand.total_revenue(at) - cost(land.matching, at));
  EXPECT_EQ(g.tag(3, 7), solve_fluid_lp(land.matching, at).basis_tag);
}

TEST(Landscape, SingleInteriorPeakOfSeparableConcaveProfit) {
  // Infinite patience makes cost linear, so profit is a concave quadratic
  // with its peak at 1/4 in each coordinate.
  const auto box = make_two_type_instance(0.0, 0.0, 1.0, 1.0, 1.5, 0.01, 0.49);
  const DemandModel d = DemandModel::linear({1.0, 1.0}, {1.0, 1.0});
  const ObjectiveGrid g = scan_objective(box, d, 49);
  const auto maxima = strict_local_maxima(g);
  ASSERT_EQ(maxima.size(), 1u);
  EXPECT_NEAR(maxima[0].lambda[0], 0.25, 1e-9);
  EXPECT_NEAR(maxima[0].lambda[1], 0.25, 1e-9);
  EXPECT_TRUE(locate_kinks(box, d, g).empty());
}

TEST(Landscape, MultimodalProfitWithKinks) {
  const PricingLandscape land = multimodal_pricing();
  const ObjectiveGrid g = scan_objective(land.matching, land.demand, 200);
  EXPECT_GE(strict_local_maxima(g).size(), 2u);
  const auto kinks = locate_kinks(land.matching, land.demand, g);
  ASSERT_FALSE(kinks.empty());
  for (const auto& k : kinks) EXPECT_GT(std::abs(k.left - k.right), 1e-3);
}

TEST(Landscape, RejectsWrongShape) {
  const PricingLandscape land = multimodal_pricing();
  EXPECT_THROW(scan_objective(land.matching, land.demand, 1), ValidationError);
  EXPECT_THROW(scan_objective(nonconcave_equal_patience(), land.demand, 10), ValidationError);
}
