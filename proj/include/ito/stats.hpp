#pragma once

#include <span>

#include "ito/convergence.hpp"

namespace ito {

// Reductions over per-path sample arrays. All of them run in ascending
// index order, so a statistic computed from a parallel-filled array is
// bit-identical to the serial reference regardless of thread count.

double sum_ordered(std::span<const double> values);
double mean(std::span<const double> values);
// Unbiased sample variance (two-pass). Needs n >= 2.
double sample_variance(std::span<const double> values);
// Mean with std_error = sample standard deviation / sqrt(n).
MonteCarloEstimate mean_estimate(std::span<const double> values);
double max_abs(std::span<const double> values);

}  // namespace ito
