#pragma once

#include <cstdint>
#include <exception>
#include <utility>

#include "ito/wiener.hpp"

namespace ito {

// How an ensemble sweep executes. The serial mode is the reference
// implementation: the parallel kernel must produce bit-identical per-path
// results, which tests assert.
enum class RunMode {
  kSerial,
  kParallel,
};

// Applies fn(index, path) to every path of the ensemble. Paths are
// regenerated per call from their counter-based seeds, so iteration order
// and thread assignment cannot change any result; fn writes its findings
// into caller-owned slots indexed by path. The first exception thrown by
// fn is rethrown after the sweep.
template <class Fn>
void for_each_path(const PathEnsemble& ensemble, RunMode mode, Fn&& fn) {
  const auto n = static_cast<std::int64_t>(ensemble.count());
  if (mode == RunMode::kSerial) {
    for (std::int64_t i = 0; i < n; ++i) {
      fn(static_cast<std::size_t>(i), ensemble.path(static_cast<std::size_t>(i)));
    }
    return;
  }
  std::exception_ptr first_error = nullptr;
#pragma omp parallel for schedule(dynamic, 16)
  for (std::int64_t i = 0; i < n; ++i) {
    try {
      fn(static_cast<std::size_t>(i), ensemble.path(static_cast<std::size_t>(i)));
    } catch (...) {
#pragma omp critical(ito_for_each_path_error)
      {
        if (!first_error) first_error = std::current_exception();
      }
    }
  }
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace ito
