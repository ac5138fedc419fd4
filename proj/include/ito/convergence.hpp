#pragma once

#include <span>
#include <vector>

namespace ito {

struct MonteCarloEstimate {
  double value = 0.0;
  double std_error = 0.0;  // sample standard deviation / sqrt(n)
  std::size_t sample_count = 0;
};

// Fraction of |d| > eps with its binomial standard error. Empty input is
// a usage error.
MonteCarloEstimate exceedance_prob(std::span<const double> diffs, double eps);

// Empirical Ky Fan distance of the sample from 0: the smallest eps >= 0
// with P(|d| > eps) <= eps, found by an exact scan over the sorted
// absolute values (no bisection tolerance). Metrizes convergence in
// probability: it shrinks to 0 iff the exceedance probabilities do.
double ky_fan(std::span<const double> diffs);

// ky_fan plus a standard error; the SE is the binomial error of the
// exceedance probability at the returned point, sqrt(k(1-k)/n), which is
// the first-order uncertainty of the crossing location.
MonteCarloEstimate ky_fan_estimate(std::span<const double> diffs);

struct ConvergenceRow {
  int level = 0;
  std::vector<MonteCarloEstimate> exceedance;  // one per epsilon in the grid
  double ky_fan = 0.0;
  double ky_fan_se = 0.0;
};

struct ConvergenceReport {
  std::vector<double> eps_grid;
  std::vector<ConvergenceRow> rows;
  bool verdict = false;
};

// {1e-3, 1e-2, 1e-1, 1}: spans the accuracy range reachable with
// desk-scale ensembles of ~1e4 paths.
std::span<const double> default_eps_grid();

ConvergenceRow make_convergence_row(int level, std::span<const double> diffs,
                                    std::span<const double> eps_grid);

// Pass iff ky_fan never rises by more than 2 combined standard errors
// between consecutive rows and the final row is at or below `threshold`.
// Needs at least 2 rows (usage error otherwise).
bool assess(std::span<const ConvergenceRow> rows, double threshold);

// True iff the non-increasing-within-slack half of assess holds.
bool ky_fan_trend_ok(std::span<const ConvergenceRow> rows);

}  // namespace ito
