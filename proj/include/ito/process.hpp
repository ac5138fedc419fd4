#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "ito/wiener.hpp"

namespace ito {

// Read-only view of a path up to a cutoff knot. This is how the
// filtration is realized: an evaluator handed a prefix simply cannot
// observe anything after its cutoff, so adaptedness holds by
// construction instead of by statistical test.
class PathPrefix {
 public:
  // cutoff must be a knot of the path's grid.
  PathPrefix(const WienerPath& path, double cutoff);

  double cutoff() const { return cutoff_; }

  // Value at knot time t <= cutoff. Reading past the cutoff throws
  // PrefixReadError; t off the grid throws OffGridError.
  double value_at(double t) const;

 private:
  const WienerPath* path_;
  double cutoff_;
};

// Piecewise-constant integrand with the measurability structure of a
// simple process: value c0 at t = 0, coefficient i on the half-open
// interval (t_{i-1}, t_i], where coefficient i may read the path only up
// to t_{i-1}. The time-zero coefficient is a plain constant (nothing
// random is observable at cutoff 0).
class SimpleProcess {
 public:
  using PrefixFn = std::function<double(const PathPrefix&)>;

  // Hand-built form: one functional per interval;
  // interval_coeffs[i-1] covers (knots[i-1], knots[i]].
  SimpleProcess(TimeGrid knots, double time_zero_value,
                std::vector<PrefixFn> interval_coeffs);

  // Left-sampled form used by the level approximations: coefficient i is
  // clamp(f(t_{i-1}, prefix at t_{i-1}), ±bound), evaluated lazily, and
  // the time-zero value is sampled from `build_path` at construction.
  // Keeps building a level O(1) instead of allocating one closure per
  // knot. `f` must outlive the process.
  SimpleProcess(TimeGrid knots, const struct IntegrandFunctional& f,
                double bound, const WienerPath& build_path);

  const TimeGrid& knot_grid() const { return knots_; }
  std::size_t interval_count() const { return knots_.size() - 1; }
  double knot(std::size_t i) const { return knots_[i]; }
  double time_zero_value() const { return time_zero_value_; }

  // Coefficient for interval i (1-based), evaluated on a prefix whose
  // cutoff is knot(i-1).
  double coefficient(std::size_t i, const PathPrefix& prefix) const;

 private:
  TimeGrid knots_;
  double time_zero_value_ = 0.0;
  std::vector<PrefixFn> coeffs_;             // hand-built form
  const IntegrandFunctional* sampled_ = nullptr;  // left-sampled form
  double bound_ = 0.0;
};

// General adapted integrand: a functional of (t, path prefix with cutoff
// t). The caller asserts square-integrability (h2) and pathwise
// continuity; the prefix type enforces adaptedness structurally.
struct IntegrandFunctional {
  std::string name;
  std::function<double(double t, const PathPrefix&)> evaluator;
  bool h2_claim = false;
  bool pathwise_continuous_claim = false;

  double operator()(double t, const PathPrefix& prefix) const {
    return evaluator(t, prefix);
  }
};

// Value of the simple process at time t: c0 at t == 0, coefficient i on
// (t_{i-1}, t_i], and 0 past the last knot. Prefix knots required by the
// covering coefficient must be knots of `path`.
double eval_simple(const SimpleProcess& sp, double t, const WienerPath& path);

// Value on [t, next knot): the right-limit convention. This is the value
// a left-endpoint sampler sees at t, and what makes re-sampling a simple
// process on a finer grid reproduce it exactly.
double eval_simple_right_limit(const SimpleProcess& sp, double t,
                               const WienerPath& path);

// Built-in integrand library (names are the CLI catalog).
IntegrandFunctional make_constant_integrand(double value);
IntegrandFunctional make_wiener_integrand();        // b(t) = W(t)
IntegrandFunctional make_sin_of_w_integrand();      // b(t) = sin(W(t))
IntegrandFunctional make_exp_w_squared_integrand(); // b(t) = exp(W(t)^2), L2 but not H2
// Wraps a simple process as an integrand using the right-limit
// convention; shares ownership so the integrand is self-contained.
IntegrandFunctional integrand_from_simple(std::shared_ptr<const SimpleProcess> sp);

struct IntegrandInfo {
  std::string name;
  bool h2;
  bool pathwise_continuous;
  std::string parameter;  // empty if none
};
const std::vector<IntegrandInfo>& integrand_catalog();
// Instantiates a catalog integrand by name; UsageError for unknown names.
IntegrandFunctional make_integrand(const std::string& name, double param = 1.0);

struct AdaptednessReport {
  bool passed = false;
  bool prefix_violation = false;  // evaluator tried to read past its cutoff
  std::size_t evaluations = 0;
};

// Defense-in-depth probe: evaluates f at (t, prefix) against copies of
// the path whose values strictly after t are replaced by fresh Wiener
// continuations. Passes iff every evaluation is bit-identical. An
// attempted read past the cutoff is reported as a violation.
AdaptednessReport probe_adaptedness(const IntegrandFunctional& f, double t,
                                    const WienerPath& path,
                                    std::size_t perturbations,
                                    std::uint64_t probe_seed);

}  // namespace ito
