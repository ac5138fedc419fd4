#include "ito/integrator.hpp"

#include <algorithm>

#include "ito/errors.hpp"

namespace ito {

double integrate_simple(const SimpleProcess& sp, double t, const WienerPath& path) {
  if (t < 0.0) throw UsageError("integrate_simple: t must be >= 0");
  if (t == 0.0) return 0.0;
  double sum = 0.0;
  double w_lo = path.value_at(0.0);
  for (std::size_t i = 1; i <= sp.interval_count(); ++i) {
    const double lo = sp.knot(i - 1);
    if (!(lo < t)) break;
    const double hi = std::min(sp.knot(i), t);
    const double w_hi = path.value_at(hi);
    sum += sp.coefficient(i, PathPrefix(path, lo)) * (w_hi - w_lo);
    w_lo = w_hi;
  }
  return sum;
}

std::vector<std::pair<double, double>> integral_path(const SimpleProcess& sp,
                                                     const WienerPath& path) {
  const TimeGrid& grid = path.grid();
  if (!grid.is_superset_of(sp.knot_grid())) {
    throw OffGridError("integral_path: process knots must lie on the path grid");
  }
  const std::size_t n = sp.interval_count();
  std::vector<std::pair<double, double>> out;
  out.reserve(grid.size());
  out.emplace_back(0.0, 0.0);

  // Completed-interval running sum, anchored at the most recent process
  // knot so every emitted value matches integrate_simple bit-for-bit.
  double completed = 0.0;
  std::size_t i = 1;  // current process interval
  double anchor_w = path.value_at(0.0);
  double coeff = (n >= 1) ? sp.coefficient(1, PathPrefix(path, sp.knot(0))) : 0.0;
  for (std::size_t j = 1; j < grid.size(); ++j) {
    const double u = grid[j];
    const double w = path.value_index(j);
    double value;
    if (i > n) {
      value = completed;  // past the last knot: integrand is 0
    } else if (u == sp.knot(i)) {
      completed += coeff * (w - anchor_w);
      value = completed;
      ++i;
      if (i <= n) {
        anchor_w = w;
        coeff = sp.coefficient(i, PathPrefix(path, sp.knot(i - 1)));
      }
    } else {
      value = completed + coeff * (w - anchor_w);
    }
    out.emplace_back(u, value);
  }
  return out;
}

double simple_squared_time_integral(const SimpleProcess& sp, double t,
                                    const WienerPath& path) {
  if (t < 0.0) throw UsageError("simple_squared_time_integral: t must be >= 0");
  double sum = 0.0;
  for (std::size_t i = 1; i <= sp.interval_count(); ++i) {
    const double lo = sp.knot(i - 1);
    if (!(lo < t)) break;
    const double hi = std::min(sp.knot(i), t);
    const double c = sp.coefficient(i, PathPrefix(path, lo));
    sum += c * c * (hi - lo);
  }
  return sum;
}

IntegralTrace integrate_general(const IntegrandFunctional& f, double t,
                                const ApproximationScheme& scheme,
                                const WienerPath& finest_path) {
  IntegralTrace trace;
  trace.t = t;
  trace.levels.reserve(scheme.level_count());
  for (int level = scheme.level_min(); level <= scheme.level_max(); ++level) {
    const SimpleProcess sp = approximate(f, t, scheme, level, finest_path);
    const double value = integrate_simple(sp, t, finest_path);
    trace.levels.push_back(
        TraceLevel{level, scheme.grid(level).step_count(), value});
  }
  trace.accepted_value = trace.levels.back().value;
  return trace;
}

}  // namespace ito
