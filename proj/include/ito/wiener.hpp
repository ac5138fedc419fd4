#pragma once

#include <cstdint>
#include <vector>

#include "ito/rng.hpp"
#include "ito/time_grid.hpp"

namespace ito {

// One sampled Wiener trajectory on a grid. Values exist at knots only;
// anything off-grid is an error rather than an interpolation, because the
// adaptedness probes downstream must see exactly what was sampled.
class WienerPath {
 public:
  WienerPath(TimeGrid grid, std::vector<double> values);

  const TimeGrid& grid() const { return grid_; }
  double horizon() const { return grid_.horizon(); }
  std::size_t knot_count() const { return grid_.size(); }
  double value_index(std::size_t i) const { return values_[i]; }
  const std::vector<double>& values() const { return values_; }

  // Value at knot time t; OffGridError if t is not a knot.
  double value_at(double t) const { return values_[grid_.index_of(t)]; }

 private:
  TimeGrid grid_;
  std::vector<double> values_;
};

// Samples a standard Wiener path on `grid`: independent Gaussian
// increments with variance equal to the step length, one stream draw per
// step in knot order.
WienerPath sample_path(const TimeGrid& grid, const SeedSpec& seed);

// Conditionally samples the path at the extra knots of `fine_grid` via
// the Brownian bridge: an inserted knot s between the last pinned value
// at a and the original value at b gets mean linearly interpolated from
// (W(a), W(b)) and variance (s-a)(b-s)/(b-a). Values at original knots
// are copied bit-identically, so refining never perturbs coarser levels.
// One draw per inserted knot, consumed in knot order.
WienerPath refine(const WienerPath& path, const TimeGrid& fine_grid,
                  const SeedSpec& seed);

// Restriction of a path to a coarser grid (values copied bit-identically).
// Every knot of `coarse_grid` must be a knot of the path.
WienerPath restrict_to(const WienerPath& path, const TimeGrid& coarse_grid);

// A finite sample of Wiener paths, addressed by index. Paths are not
// stored: path(i) is a pure function of (master_seed, i, grid), so
// ensembles of any size can be traversed concurrently in any order.
class PathEnsemble {
 public:
  PathEnsemble(std::uint64_t master_seed, TimeGrid grid, std::size_t count);

  std::uint64_t master_seed() const { return master_seed_; }
  const TimeGrid& grid() const { return grid_; }
  std::size_t count() const { return count_; }

  WienerPath path(std::size_t index) const;

 private:
  std::uint64_t master_seed_;
  TimeGrid grid_;
  std::size_t count_;
};

}  // namespace ito
