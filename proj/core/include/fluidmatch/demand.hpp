#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

namespace fluidmatch {

/// Per-type revenue r_i(lambda_i) = lambda_i p_i(lambda_i) as a function of the
/// arrival rate the price induces.
class DemandModel {
 public:
  enum class Kind { Linear, Custom };
  using ScalarFn = std::function<double(double)>;

  /// p_i(lambda) = solo_length_i * (1 - lambda / max_rate_i): willingness to pay
  /// per mile uniform on [0, 1] among max_rate_i potential riders.
  static DemandModel linear(std::vector<double> solo_length, std::vector<double> max_rate);

  /// Arbitrary concave revenues with their derivatives. Each r_i is checked for
  /// midpoint concavity on 100 seeded pairs from [lower_i, upper_i].
  static DemandModel custom(std::vector<ScalarFn> revenue, std::vector<ScalarFn> marginal_revenue,
                            const std::vector<double>& lower, const std::vector<double>& upper,
                            std::uint64_t seed = 0);

  Kind kind() const noexcept { return kind_; }
  std::size_t size() const noexcept;

  double revenue(std::size_t i, double lambda) const;
  double marginal_revenue(std::size_t i, double lambda) const;
  double total_revenue(const std::vector<double>& lambda) const;

  /// Linear model parameters; empty for Custom.
  const std::vector<double>& solo_length() const noexcept { return solo_length_; }
  const std::vector<double>& max_rate() const noexcept { return max_rate_; }

 private:
  Kind kind_ = Kind::Linear;
  std::vector<double> solo_length_;
  std::vector<double> max_rate_;
  std::vector<ScalarFn> revenue_;
  std::vector<ScalarFn> marginal_;
};

}  // namespace fluidmatch
