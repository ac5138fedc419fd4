#include "ito/process.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "ito/errors.hpp"

namespace ito {

PathPrefix::PathPrefix(const WienerPath& path, double cutoff)
    : path_(&path), cutoff_(cutoff) {
  path.grid().index_of(cutoff);  // must be a knot
}

double PathPrefix::value_at(double t) const {
  if (t > cutoff_) {
    throw PrefixReadError("prefix read at t=" + std::to_string(t) +
                          " past cutoff " + std::to_string(cutoff_));
  }
  return path_->value_at(t);
}

namespace {

double clamp_to(double value, double bound) {
  if (value > bound) return bound;
  if (value < -bound) return -bound;
  return value;
}

}  // namespace

SimpleProcess::SimpleProcess(TimeGrid knots, double time_zero_value,
                             std::vector<PrefixFn> interval_coeffs)
    : knots_(std::move(knots)),
      time_zero_value_(time_zero_value),
      coeffs_(std::move(interval_coeffs)) {
  if (coeffs_.size() != knots_.size() - 1) {
    throw UsageError("SimpleProcess: one coefficient per interval required");
  }
}

SimpleProcess::SimpleProcess(TimeGrid knots, const IntegrandFunctional& f,
                             double bound, const WienerPath& build_path)
    : knots_(std::move(knots)), sampled_(&f), bound_(bound) {
  if (!(bound > 0.0)) throw UsageError("SimpleProcess: bound must be positive");
  time_zero_value_ = clamp_to(f(0.0, PathPrefix(build_path, 0.0)), bound_);
}

double SimpleProcess::coefficient(std::size_t i, const PathPrefix& prefix) const {
  if (i == 0 || i > interval_count()) {
    throw UsageError("SimpleProcess::coefficient: interval index out of range");
  }
  if (sampled_ != nullptr) {
    return clamp_to((*sampled_)(knots_[i - 1], prefix), bound_);
  }
  return coeffs_[i - 1](prefix);
}

namespace {

// Index i of the interval (t_{i-1}, t_i] containing t, 0 for t == 0,
// interval_count()+1 for t past the last knot.
std::size_t covering_interval(const TimeGrid& knots, double t) {
  if (t == 0.0) return 0;
  const auto span = knots.knots();
  const auto it = std::lower_bound(span.begin(), span.end(), t);
  if (it == span.end()) return knots.size();  // past the last knot
  return static_cast<std::size_t>(it - span.begin());
}

}  // namespace

double eval_simple(const SimpleProcess& sp, double t, const WienerPath& path) {
  if (t < 0.0) throw UsageError("eval_simple: t must be >= 0");
  const std::size_t i = covering_interval(sp.knot_grid(), t);
  if (i == 0) return sp.time_zero_value();
  if (i > sp.interval_count()) return 0.0;
  return sp.coefficient(i, PathPrefix(path, sp.knot(i - 1)));
}

double eval_simple_right_limit(const SimpleProcess& sp, double t,
                               const WienerPath& path) {
  if (t < 0.0) throw UsageError("eval_simple_right_limit: t must be >= 0");
  // Interval with t in [t_{i-1}, t_i): first knot strictly greater than t.
  const auto span = sp.knot_grid().knots();
  const auto it = std::upper_bound(span.begin(), span.end(), t);
  if (it == span.end()) return 0.0;  // t at or past the last knot
  const auto i = static_cast<std::size_t>(it - span.begin());
  return sp.coefficient(i, PathPrefix(path, sp.knot(i - 1)));
}

IntegrandFunctional make_constant_integrand(double value) {
  return IntegrandFunctional{
      .name = "const",
      .evaluator = [value](double, const PathPrefix&) { return value; },
      .h2_claim = true,
      .pathwise_continuous_claim = true,
  };
}

IntegrandFunctional make_wiener_integrand() {
  return IntegrandFunctional{
      .name = "wiener",
      .evaluator = [](double t, const PathPrefix& prefix) { return prefix.value_at(t); },
      .h2_claim = true,
      .pathwise_continuous_claim = true,
  };
}

IntegrandFunctional make_sin_of_w_integrand() {
  return IntegrandFunctional{
      .name = "sin-of-w",
      .evaluator =
          [](double t, const PathPrefix& prefix) { return std::sin(prefix.value_at(t)); },
      .h2_claim = true,
      .pathwise_continuous_claim = true,
  };
}

IntegrandFunctional make_exp_w_squared_integrand() {
  // Pathwise continuous, hence locally integrable along every path, but
  // E exp(2 W_s^2) = infinity once s >= 1/4: in L2, not in H2.
  return IntegrandFunctional{
      .name = "exp-w-squared",
      .evaluator =
          [](double t, const PathPrefix& prefix) {
            const double w = prefix.value_at(t);
            return std::exp(w * w);
          },
      .h2_claim = false,
      .pathwise_continuous_claim = true,
  };
}

IntegrandFunctional integrand_from_simple(std::shared_ptr<const SimpleProcess> sp) {
  return IntegrandFunctional{
      .name = "simple",
      .evaluator =
          [sp](double t, const PathPrefix& prefix) {
            // Right-limit value, readable from the prefix because the
            // covering interval starts at or before t.
            const auto span = sp->knot_grid().knots();
            const auto it = std::upper_bound(span.begin(), span.end(), t);
            if (it == span.end()) return 0.0;
            const auto i = static_cast<std::size_t>(it - span.begin());
            if (i == 0) return sp->time_zero_value();
            return sp->coefficient(i, prefix);
          },
      .h2_claim = true,
      .pathwise_continuous_claim = false,
  };
}

const std::vector<IntegrandInfo>& integrand_catalog() {
  static const std::vector<IntegrandInfo> catalog = {
      {"const", true, true, "value (default 1.0)"},
      {"wiener", true, true, ""},
      {"sin-of-w", true, true, ""},
      {"exp-w-squared", false, true, ""},
  };
  return catalog;
}

IntegrandFunctional make_integrand(const std::string& name, double param) {
  if (name == "const") return make_constant_integrand(param);
  if (name == "wiener") return make_wiener_integrand();
  if (name == "sin-of-w") return make_sin_of_w_integrand();
  if (name == "exp-w-squared") return make_exp_w_squared_integrand();
  throw UsageError("unknown integrand '" + name + "'");
}

AdaptednessReport probe_adaptedness(const IntegrandFunctional& f, double t,
                                    const WienerPath& path,
                                    std::size_t perturbations,
                                    std::uint64_t probe_seed) {
  if (perturbations == 0) throw UsageError("probe_adaptedness: perturbations must be >= 1");
  if (!(t < path.horizon())) {
    throw UsageError("probe_adaptedness: t must lie before the path horizon");
  }
  AdaptednessReport report;

  double base = 0.0;
  try {
    base = f(t, PathPrefix(path, t));
    ++report.evaluations;
  } catch (const PrefixReadError&) {
    report.prefix_violation = true;
    return report;
  }

  const TimeGrid& grid = path.grid();
  const std::size_t cut = grid.index_of(t);
  for (std::size_t p = 0; p < perturbations; ++p) {
    // Same prefix, fresh Wiener continuation strictly after t.
    std::vector<double> values(path.values());
    GaussianStream stream(derive_seed(probe_seed, p, StreamPurpose::kPathIncrements));
    for (std::size_t i = cut + 1; i < grid.size(); ++i) {
      const double dt = grid[i] - grid[i - 1];
      values[i] = values[i - 1] + std::sqrt(dt) * stream();
    }
    const WienerPath perturbed(grid, std::move(values));
    try {
      const double v = f(t, PathPrefix(perturbed, t));
      ++report.evaluations;
      if (v != base) return report;  // observed the future: fail
    } catch (const PrefixReadError&) {
      report.prefix_violation = true;
      return report;
    }
  }
  report.passed = true;
  return report;
}

}  // namespace ito
