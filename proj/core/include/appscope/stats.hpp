#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace appscope {

/// Boxplot numbers for a sample.
struct DistributionSummary {
  double min = 0;
  double q1 = 0;
  double median = 0;
  double q3 = 0;
  double max = 0;
  double lower_fence = 0;    // q1 - 1.5 IQR
  double upper_fence = 0;    // q3 + 1.5 IQR
  double whisker_low = 0;    // smallest value inside the fences
  double whisker_high = 0;   // largest value inside the fences
  std::vector<double> outliers;  // strictly outside the fences, ascending

  friend bool operator==(const DistributionSummary&, const DistributionSummary&) = default;
};

/// Quantile by linear interpolation between order statistics,
/// h = (n - 1) p. `sorted` must be ascending and non-empty.
double quantile_linear(std::span<const double> sorted, double p);

/// Throws PreconditionError for an empty sample.
DistributionSummary distribution_summary(std::span<const std::uint64_t> values);

/// Empirical CDF: one (value, fraction of samples <= value) point per
/// distinct value, ascending. Empty input gives no points.
std::vector<std::pair<double, double>> empirical_cdf(std::span<const std::uint64_t> values);

}  // namespace appscope
