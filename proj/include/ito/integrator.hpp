#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "ito/approximation.hpp"
#include "ito/process.hpp"

namespace ito {

// Values of I(b_n)(t) across approximation levels. The accepted value is
// the finest level's value, with no extrapolation: the trace itself is
// the convergence evidence.
struct TraceLevel {
  int level;
  std::size_t grid_size;
  double value;
};

struct IntegralTrace {
  std::vector<TraceLevel> levels;  // ordered by increasing grid size
  double accepted_value = 0.0;
  double t = 0.0;
};

// The explicit stochastic integral of a simple process:
//   sum_i c_i (W(min(t_i, t)) - W(t_{i-1}))  over intervals with t_{i-1} < t,
// 0 for t == 0. Terms are accumulated in ascending interval order at the
// process's own knot granularity, so the value does not change when the
// path grid is refined. Every knot read must be a path knot (OffGridError
// otherwise); t itself must be a knot when it cuts an interval short.
double integrate_simple(const SimpleProcess& sp, double t, const WienerPath& path);

// The integral as a process: (knot, value) for every knot of the path
// grid, value at 0 being exactly 0. Values are anchored at the simple
// process's knots with the same arithmetic as integrate_simple, so
// integral_path(sp, path)[j].second == integrate_simple(sp, u_j, path)
// bit-for-bit. Requires sp's knots to be a subset of the path grid.
std::vector<std::pair<double, double>> integral_path(const SimpleProcess& sp,
                                                     const WienerPath& path);

// Exact time integral of the squared simple process on [0, t]:
// sum_i c_i^2 (min(t_i, t) - t_{i-1}). Used by the isometry check.
double simple_squared_time_integral(const SimpleProcess& sp, double t,
                                    const WienerPath& path);

// Realizes the approximation-limit construction for a general integrand:
// builds the level-n simple process for every level of the scheme,
// integrates it, and records the trace. The path is supplied at the
// finest level; coarser levels read only their own knots, which is
// exactly the restriction of the path to the coarser grid.
IntegralTrace integrate_general(const IntegrandFunctional& f, double t,
                                const ApproximationScheme& scheme,
                                const WienerPath& finest_path);

}  // namespace ito
