#include "fluidmatch/reference_instances.hpp"

namespace fluidmatch {

MatchingInstance nonconcave_two_type() { return make_two_type_instance(1.0, 2.0, 1.0, 1.0, 1.01); }

MatchingInstance nonconcave_equal_patience() {
  const Matrix c{{0.70, 0.77, 0.83, 0.92},
                 {0.77, 0.40, 0.62, 0.74},
                 {0.83, 0.62, 0.50, 0.86},
                 {0.92, 0.74, 0.86, 0.70}};
  return make_instance({1.0, 1.0, 1.0, 1.0}, c, std::vector<double>(4, 1e-3), std::vector<double>(4, 1e4));
}

MatchingInstance threshold_kink_two_type() { return make_two_type_instance(1.0, 8.0, 1.0, 1.0, 1.05); }

MatchingInstance perfect_efficiency_two_type() {
  return make_two_type_instance(1.0, 8.0, 1.0, 1.0, 1.0, 1e-3, 1e5);
}

PricingLandscape multimodal_pricing() {
  MatchingInstance m = make_two_type_instance(0.3, 0.3, 1.1, 1.1, 1.65, 0.01, 1.0);
  return {std::move(m), DemandModel::linear({1.0, 1.0}, {1.0, 1.0})};
}

}  // namespace fluidmatch
