#include "ito/convergence.hpp"

#include <algorithm>
#include <cmath>

#include "ito/errors.hpp"

namespace ito {

MonteCarloEstimate exceedance_prob(std::span<const double> diffs, double eps) {
  if (diffs.empty()) throw UsageError("exceedance_prob: empty sample");
  if (!(eps > 0.0)) throw UsageError("exceedance_prob: eps must be positive");
  std::size_t hits = 0;
  for (double d : diffs) {
    if (std::fabs(d) > eps) ++hits;
  }
  const auto n = static_cast<double>(diffs.size());
  const double p = static_cast<double>(hits) / n;
  return MonteCarloEstimate{p, std::sqrt(p * (1.0 - p) / n), diffs.size()};
}

double ky_fan(std::span<const double> diffs) {
  if (diffs.empty()) throw UsageError("ky_fan: empty sample");
  std::vector<double> abs(diffs.size());
  std::transform(diffs.begin(), diffs.end(), abs.begin(),
                 [](double d) { return std::fabs(d); });
  std::sort(abs.begin(), abs.end());

  // With i values <= eps, P(|d| > eps) = (n - i)/n on [a_i, a_{i+1}).
  // The infimum inside that window is max(a_i, (n-i)/n), valid when it
  // stays below the window's right edge; the first valid window wins.
  const std::size_t n = abs.size();
  for (std::size_t i = 0; i <= n; ++i) {
    const double lo = (i == 0) ? 0.0 : abs[i - 1];
    const double p = static_cast<double>(n - i) / static_cast<double>(n);
    const double candidate = std::max(lo, p);
    const bool open_right = (i == n) || candidate < abs[i];
    if (open_right) return candidate;
  }
  return abs.back();  // unreachable: the i == n window always accepts
}

MonteCarloEstimate ky_fan_estimate(std::span<const double> diffs) {
  const double k = ky_fan(diffs);
  const auto n = static_cast<double>(diffs.size());
  return MonteCarloEstimate{k, std::sqrt(k * (1.0 - k) / n), diffs.size()};
}

std::span<const double> default_eps_grid() {
  static const double grid[] = {1e-3, 1e-2, 1e-1, 1.0};
  return grid;
}

ConvergenceRow make_convergence_row(int level, std::span<const double> diffs,
                                    std::span<const double> eps_grid) {
  ConvergenceRow row;
  row.level = level;
  row.exceedance.reserve(eps_grid.size());
  for (double eps : eps_grid) row.exceedance.push_back(exceedance_prob(diffs, eps));
  const MonteCarloEstimate kf = ky_fan_estimate(diffs);
  row.ky_fan = kf.value;
  row.ky_fan_se = kf.std_error;
  return row;
}

bool ky_fan_trend_ok(std::span<const ConvergenceRow> rows) {
  for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
    const double slack = 2.0 * std::hypot(rows[i].ky_fan_se, rows[i + 1].ky_fan_se);
    if (rows[i + 1].ky_fan > rows[i].ky_fan + slack) return false;
  }
  return true;
}

bool assess(std::span<const ConvergenceRow> rows, double threshold) {
  if (rows.size() < 2) throw UsageError("assess: need at least 2 levels");
  return ky_fan_trend_ok(rows) && rows.back().ky_fan <= threshold;
}

}  // namespace ito
