#include "ito/stats.hpp"

#include <cmath>

#include "ito/errors.hpp"

namespace ito {

double sum_ordered(std::span<const double> values) {
  double s = 0.0;
  for (double v : values) s += v;
  return s;
}

double mean(std::span<const double> values) {
  if (values.empty()) throw UsageError("mean: empty sample");
  return sum_ordered(values) / static_cast<double>(values.size());
}

double sample_variance(std::span<const double> values) {
  if (values.size() < 2) throw UsageError("sample_variance: need n >= 2");
  const double m = mean(values);
  double ss = 0.0;
  for (double v : values) {
    const double d = v - m;
    ss += d * d;
  }
  return ss / static_cast<double>(values.size() - 1);
}

MonteCarloEstimate mean_estimate(std::span<const double> values) {
  const double m = mean(values);
  const auto n = static_cast<double>(values.size());
  const double se =
      values.size() >= 2 ? std::sqrt(sample_variance(values) / n) : 0.0;
  return MonteCarloEstimate{m, se, values.size()};
}

double max_abs(std::span<const double> values) {
  double m = 0.0;
  for (double v : values) m = std::max(m, std::fabs(v));
  return m;
}

}  // namespace ito
