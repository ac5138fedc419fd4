#pragma once

#include <memory>
#include <span>
#include <vector>

namespace ito {

// Strictly increasing finite knot times starting at 0. Immutable and
// cheap to copy (knots are shared), so grids can be passed around freely
// between concurrent workers.
//
// Dyadic grids (2^level uniform steps) are the default family: halving
// the step keeps every coarser knot bit-identical, which is what lets
// one sample point couple all approximation levels.
class TimeGrid {
 public:
  explicit TimeGrid(std::vector<double> knots);

  // Uniform grid with 2^level steps on [0, horizon]. Knot i equals
  // i * (horizon / 2^level) exactly, so dyadic(k) is a bit-exact subset
  // of dyadic(k+1) for the same horizon.
  static TimeGrid dyadic(int level, double horizon);

  std::size_t size() const { return knots_->size(); }
  std::size_t step_count() const { return knots_->size() - 1; }
  double horizon() const { return knots_->back(); }
  double operator[](std::size_t i) const { return (*knots_)[i]; }
  std::span<const double> knots() const { return {knots_->data(), knots_->size()}; }

  bool contains(double t) const;
  // Index of the knot equal to t; OffGridError if absent.
  std::size_t index_of(double t) const;
  bool is_superset_of(const TimeGrid& other) const;
  // Knots up to and including t (t must be a knot).
  TimeGrid prefix(double t) const;

 private:
  std::shared_ptr<const std::vector<double>> knots_;
  double uniform_dt_ = 0.0;  // > 0 when knot i == i * uniform_dt_ exactly
};

}  // namespace ito
