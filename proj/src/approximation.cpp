#include "ito/approximation.hpp"

#include <cmath>

#include "ito/errors.hpp"

namespace ito {

TruncationSchedule TruncationSchedule::linear(double coef) {
  if (!(coef > 0.0)) throw UsageError("TruncationSchedule: coefficient must be positive");
  return {Kind::kLinear, coef};
}

TruncationSchedule TruncationSchedule::auto_for(const IntegrandFunctional& f) {
  return f.h2_claim ? none() : linear(1.0);
}

ApproximationScheme::ApproximationScheme(double t, int level_min, int level_max,
                                         TruncationSchedule truncation)
    : t_(t), level_min_(level_min), level_max_(level_max), truncation_(truncation) {
  if (!(t > 0.0) || !std::isfinite(t)) {
    throw UsageError("ApproximationScheme: t must be positive and finite");
  }
  if (level_min < 1 || level_max < level_min) {
    throw UsageError("ApproximationScheme: need 1 <= level_min <= level_max");
  }
  grids_.reserve(level_count());
  for (int k = level_min_; k <= level_max_; ++k) {
    grids_.push_back(TimeGrid::dyadic(k, t_));
  }
}

const TimeGrid& ApproximationScheme::grid(int level) const {
  if (level < level_min_ || level > level_max_) {
    throw UsageError("ApproximationScheme::grid: level outside the scheme");
  }
  return grids_[static_cast<std::size_t>(level - level_min_)];
}

SimpleProcess approximate(const IntegrandFunctional& f, double t,
                          const ApproximationScheme& scheme, int level,
                          const WienerPath& path) {
  if (t != scheme.t()) {
    throw UsageError("approximate: t must match the scheme's support endpoint");
  }
  const TimeGrid& knots = scheme.grid(level);
  // The path must carry the level's knots; endpoints checked here, the
  // rest surface as OffGridError at first read.
  path.grid().index_of(knots.horizon());
  return SimpleProcess(knots, f, scheme.bound(level), path);
}

double l2_error(const IntegrandFunctional& f, const SimpleProcess& sp, double t,
                const WienerPath& path, const TimeGrid& quadrature_grid) {
  if (quadrature_grid.horizon() != t) {
    throw UsageError("l2_error: quadrature grid must end exactly at t");
  }
  if (!path.grid().is_superset_of(quadrature_grid)) {
    throw OffGridError("l2_error: quadrature grid must lie inside the path grid");
  }
  const TimeGrid& knots = sp.knot_grid();
  for (double knot : knots.knots()) {
    if (knot >= t) break;
    if (!quadrature_grid.contains(knot)) {
      throw OffGridError("l2_error: quadrature grid must refine the process knots");
    }
  }

  // Walk the quadrature cells once, tracking the covering interval of sp
  // so each coefficient is evaluated a single time.
  const auto q = quadrature_grid.knots();
  const std::size_t n = sp.interval_count();
  std::size_t interval = 0;  // 0 = not yet entered interval 1
  double coeff = sp.time_zero_value();
  double next_knot = n >= 1 ? sp.knot(1) : -1.0;
  double sum = 0.0;
  for (std::size_t j = 0; j + 1 < q.size(); ++j) {
    const double left = q[j];
    // Right-limit value of sp at `left`.
    if (interval <= n && (interval == 0 || left >= next_knot)) {
      while (interval < n && left >= sp.knot(interval)) ++interval;
      if (left >= sp.knot(n)) {
        interval = n + 1;  // past the support
        coeff = 0.0;
      } else {
        coeff = sp.coefficient(interval, PathPrefix(path, sp.knot(interval - 1)));
        next_knot = sp.knot(interval);
      }
    }
    const double d = f(left, PathPrefix(path, left)) - coeff;
    sum += d * d * (q[j + 1] - left);
  }
  return sum;
}

}  // namespace ito
