#pragma once

#include <limits>
#include <vector>

#include "ito/process.hpp"
#include "ito/time_grid.hpp"

namespace ito {

// Coefficient magnitude cap per level. Non-decreasing in the level, so
// truncation only ever relaxes as the approximation refines; a finite cap
// is what keeps the sampled simple processes square integrable for
// integrands that are not.
struct TruncationSchedule {
  enum class Kind { kNone, kLinear };

  Kind kind = Kind::kNone;
  double coef = 1.0;  // L(level) = coef * level for kLinear

  double bound(int level) const {
    if (kind == Kind::kNone) return std::numeric_limits<double>::infinity();
    return coef * static_cast<double>(level);
  }

  static TruncationSchedule none() { return {Kind::kNone, 1.0}; }
  static TruncationSchedule linear(double coef);
  // none() for integrands claiming h2, linear(1) otherwise.
  static TruncationSchedule auto_for(const IntegrandFunctional& f);
};

// Nested dyadic grids on [0, t] for levels level_min..level_max plus the
// truncation schedule: the data defining one approximating sequence of
// simple processes supported on [0, t]. Grids are materialized eagerly so
// the scheme is immutable and shareable across worker threads.
class ApproximationScheme {
 public:
  ApproximationScheme(double t, int level_min, int level_max,
                      TruncationSchedule truncation);

  double t() const { return t_; }
  int level_min() const { return level_min_; }
  int level_max() const { return level_max_; }
  std::size_t level_count() const {
    return static_cast<std::size_t>(level_max_ - level_min_ + 1);
  }
  int level_at(std::size_t pos) const { return level_min_ + static_cast<int>(pos); }
  const TimeGrid& grid(int level) const;
  double bound(int level) const { return truncation_.bound(level); }
  const TruncationSchedule& truncation() const { return truncation_; }

 private:
  double t_;
  int level_min_;
  int level_max_;
  TruncationSchedule truncation_;
  std::vector<TimeGrid> grids_;
};

// The level-`level` member of the approximating sequence: knots are the
// level's dyadic grid on [0, t], coefficient i is
// clamp(f(t_{i-1}, prefix), ±L_level), and the process vanishes past t.
// Left sampling converges pathwise for the pathwise-continuous integrand
// library; the returned process reads only prefixes, so it has the
// simple-process measurability structure by construction.
SimpleProcess approximate(const IntegrandFunctional& f, double t,
                          const ApproximationScheme& scheme, int level,
                          const WienerPath& path);

// Left-endpoint quadrature of (f - sp)^2 over [0, t] on `quadrature_grid`,
// with sp read in the right-limit convention so the simple-vs-its-own-
// approximation case is exactly zero. The quadrature grid must refine
// both sp's knots (up to t) and be contained in the path grid, and t must
// be its final knot.
double l2_error(const IntegrandFunctional& f, const SimpleProcess& sp, double t,
                const WienerPath& path, const TimeGrid& quadrature_grid);

}  // namespace ito
