#pragma once

#include <stdexcept>
#include <string>

namespace ito {

// Requested time is not a knot of the grid in play. Paths live on grids
// only; evaluation between knots is rejected rather than interpolated.
class OffGridError : public std::runtime_error {
 public:
  explicit OffGridError(const std::string& what) : std::runtime_error(what) {}
};

// An evaluator tried to read path values past its prefix cutoff.
class PrefixReadError : public std::runtime_error {
 public:
  explicit PrefixReadError(const std::string& what) : std::runtime_error(what) {}
};

// refine() was called with a target grid that does not contain every knot
// of the path being refined.
class RefinementMismatchError : public std::runtime_error {
 public:
  explicit RefinementMismatchError(const std::string& what) : std::runtime_error(what) {}
};

// A check was invoked on inputs outside its hypothesis, e.g. the isometry
// check on an integrand without the h2 claim.
class InapplicableCheckError : public std::runtime_error {
 public:
  explicit InapplicableCheckError(const std::string& what) : std::runtime_error(what) {}
};

// Caller violated a documented precondition.
class UsageError : public std::invalid_argument {
 public:
  explicit UsageError(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace ito
