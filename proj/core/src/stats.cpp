#include "appscope/stats.hpp"

#include <algorithm>
#include <cmath>

#include "appscope/errors.hpp"

namespace appscope {

double quantile_linear(std::span<const double> sorted, double p) {
  if (sorted.empty()) throw PreconditionError("quantile of an empty sample");
  double h = (static_cast<double>(sorted.size()) - 1.0) * p;
  auto lo = static_cast<std::size_t>(std::floor(h));
  auto hi = std::min(lo + 1, sorted.size() - 1);
  double frac = h - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

DistributionSummary distribution_summary(std::span<const std::uint64_t> values) {
  if (values.empty()) throw PreconditionError("distribution_summary: empty input");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());

  DistributionSummary s;
  s.min = sorted.front();
  s.max = sorted.back();
  s.q1 = quantile_linear(sorted, 0.25);
  s.median = quantile_linear(sorted, 0.5);
  s.q3 = quantile_linear(sorted, 0.75);
  double iqr = s.q3 - s.q1;
  s.lower_fence = s.q1 - 1.5 * iqr;
  s.upper_fence = s.q3 + 1.5 * iqr;
  s.whisker_low = s.max;
  s.whisker_high = s.min;
  for (double v : sorted) {
    if (v < s.lower_fence || v > s.upper_fence) {
      s.outliers.push_back(v);
    } else {
      s.whisker_low = std::min(s.whisker_low, v);
      s.whisker_high = std::max(s.whisker_high, v);
    }
  }
  return s;
}

std::vector<std::pair<double, double>> empirical_cdf(std::span<const std::uint64_t> values) {
  std::vector<std::uint64_t> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<std::pair<double, double>> points;
  const double n = static_cast<double>(sorted.size());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (i + 1 < sorted.size() && sorted[i + 1] == sorted[i]) continue;
    points.emplace_back(static_cast<double>(sorted[i]), static_cast<double>(i + 1) / n);
  }
  return points;
}

}  // namespace appscope
