#include "ito/time_grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ito/errors.hpp"

namespace ito {
namespace {

double detect_uniform_dt(const std::vector<double>& knots) {
  if (knots.size() < 2) return 0.0;
  const double dt = knots[1];
  if (!(dt > 0.0)) return 0.0;
  for (std::size_t i = 0; i < knots.size(); ++i) {
    if (knots[i] != static_cast<double>(i) * dt) return 0.0;
  }
  return dt;
}

}  // namespace

TimeGrid::TimeGrid(std::vector<double> knots) {
  if (knots.empty()) throw UsageError("TimeGrid: at least one knot required");
  if (knots.front() != 0.0) throw UsageError("TimeGrid: first knot must be 0");
  for (std::size_t i = 0; i < knots.size(); ++i) {
    if (!std::isfinite(knots[i])) throw UsageError("TimeGrid: knots must be finite");
    if (i > 0 && !(knots[i] > knots[i - 1])) {
      throw UsageError("TimeGrid: knots must be strictly increasing");
    }
  }
  uniform_dt_ = detect_uniform_dt(knots);
  knots_ = std::make_shared<const std::vector<double>>(std::move(knots));
}

TimeGrid TimeGrid::dyadic(int level, double horizon) {
  if (level < 0 || level > 30) throw UsageError("TimeGrid::dyadic: level out of range [0,30]");
  if (!(horizon > 0.0) || !std::isfinite(horizon)) {
    throw UsageError("TimeGrid::dyadic: horizon must be positive and finite");
  }
  const std::size_t steps = std::size_t{1} << level;
  const double dt = std::ldexp(horizon, -level);  // exact
  std::vector<double> knots(steps + 1);
  for (std::size_t i = 0; i <= steps; ++i) knots[i] = static_cast<double>(i) * dt;
  return TimeGrid(std::move(knots));
}

bool TimeGrid::contains(double t) const {
  const auto& k = *knots_;
  if (uniform_dt_ > 0.0) {
    const double pos = t / uniform_dt_;
    const auto i = static_cast<long long>(std::llround(pos));
    return i >= 0 && static_cast<std::size_t>(i) < k.size() &&
           k[static_cast<std::size_t>(i)] == t;
  }
  return std::binary_search(k.begin(), k.end(), t);
}

std::size_t TimeGrid::index_of(double t) const {
  const auto& k = *knots_;
  if (uniform_dt_ > 0.0) {
    const double pos = t / uniform_dt_;
    const auto i = static_cast<long long>(std::llround(pos));
    if (i >= 0 && static_cast<std::size_t>(i) < k.size() &&
        k[static_cast<std::size_t>(i)] == t) {
      return static_cast<std::size_t>(i);
    }
  } else {
    const auto it = std::lower_bound(k.begin(), k.end(), t);
    if (it != k.end() && *it == t) return static_cast<std::size_t>(it - k.begin());
  }
  throw OffGridError("time " + std::to_string(t) + " is not a grid knot");
}

bool TimeGrid::is_superset_of(const TimeGrid& other) const {
  if (knots_ == other.knots_) return true;
  for (double t : other.knots()) {
    if (!contains(t)) return false;
  }
  return true;
}

TimeGrid TimeGrid::prefix(double t) const {
  const std::size_t last = index_of(t);
  std::vector<double> head(knots_->begin(), knots_->begin() + static_cast<long>(last) + 1);
  return TimeGrid(std::move(head));
}

}  // namespace ito
