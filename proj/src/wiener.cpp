#include "ito/wiener.hpp"

#include <cmath>

#include "ito/errors.hpp"

namespace ito {

WienerPath::WienerPath(TimeGrid grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (values_.size() != grid_.size()) {
    throw UsageError("WienerPath: one value per knot required");
  }
  if (values_.front() != 0.0) throw UsageError("WienerPath: W(0) must be 0");
}

WienerPath sample_path(const TimeGrid& grid, const SeedSpec& seed) {
  GaussianStream stream(seed);
  std::vector<double> values(grid.size());
  values[0] = 0.0;
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double dt = grid[i] - grid[i - 1];
    values[i] = values[i - 1] + std::sqrt(dt) * stream.at(i - 1);
  }
  return WienerPath(grid, std::move(values));
}

WienerPath refine(const WienerPath& path, const TimeGrid& fine_grid,
                  const SeedSpec& seed) {
  const TimeGrid& coarse = path.grid();
  if (!fine_grid.is_superset_of(coarse)) {
    throw RefinementMismatchError(
        "refine: target grid must contain every knot of the path");
  }
  if (fine_grid.size() == coarse.size()) return path;

  GaussianStream stream(seed);
  std::vector<double> values(fine_grid.size());
  std::size_t ci = 0;  // next coarse knot to match
  double anchor_t = 0.0, anchor_w = 0.0;
  for (std::size_t fi = 0; fi < fine_grid.size(); ++fi) {
    const double t = fine_grid[fi];
    if (ci < coarse.size() && coarse[ci] == t) {
      values[fi] = path.value_index(ci);
      ++ci;
    } else if (ci < coarse.size()) {
      // Bridge between the last pinned value and the next original knot.
      const double right_t = coarse[ci];
      const double right_w = path.value_index(ci);
      const double span = right_t - anchor_t;
      const double mean =
          anchor_w + (t - anchor_t) / span * (right_w - anchor_w);
      const double var = (t - anchor_t) * (right_t - t) / span;
      values[fi] = mean + std::sqrt(var) * stream();
    } else {
      // Past the original horizon: plain Wiener increment.
      values[fi] = anchor_w + std::sqrt(t - anchor_t) * stream();
    }
    anchor_t = t;
    anchor_w = values[fi];
  }
  return WienerPath(fine_grid, std::move(values));
}

WienerPath restrict_to(const WienerPath& path, const TimeGrid& coarse_grid) {
  std::vector<double> values(coarse_grid.size());
  for (std::size_t i = 0; i < coarse_grid.size(); ++i) {
    values[i] = path.value_at(coarse_grid[i]);
  }
  return WienerPath(coarse_grid, std::move(values));
}

PathEnsemble::PathEnsemble(std::uint64_t master_seed, TimeGrid grid,
                           std::size_t count)
    : master_seed_(master_seed), grid_(std::move(grid)), count_(count) {
  if (count == 0) throw UsageError("PathEnsemble: count must be positive");
}

WienerPath PathEnsemble::path(std::size_t index) const {
  if (index >= count_) throw UsageError("PathEnsemble: path index out of range");
  return sample_path(grid_,
                     derive_seed(master_seed_, index, StreamPurpose::kPathIncrements));
}

}  // namespace ito
