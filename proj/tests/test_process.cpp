#include <cmath>
#include <memory>

#include "doctest.h"
#include "ito/approximation.hpp"
#include "ito/errors.hpp"
#include "ito/process.hpp"
#include "ito/rng.hpp"

using namespace ito;

namespace {
constexpr std::uint64_t kMaster = 0xabcdef01ULL;

WienerPath make_path(int level = 6, std::uint64_t index = 0, double horizon = 1.0) {
  return sample_path(TimeGrid::dyadic(level, horizon),
                     derive_seed(kMaster, index, StreamPurpose::kPathIncrements));
}

// Simple process on {0, 0.25, 0.5, 1}: c0 = 2, then constants 1, -3, 5.
SimpleProcess make_step_process() {
  return SimpleProcess(TimeGrid({0.0, 0.25, 0.5, 1.0}), 2.0,
                       {[](const PathPrefix&) { return 1.0; },
                        [](const PathPrefix&) { return -3.0; },
                        [](const PathPrefix&) { return 5.0; }});
}
}  // namespace

TEST_CASE("prefix reads are allowed up to the cutoff and rejected past it") {
  const WienerPath path = make_path();
  const PathPrefix prefix(path, 0.5);
  CHECK(prefix.value_at(0.0) == 0.0);
  CHECK(prefix.value_at(0.5) == path.value_at(0.5));
  CHECK(prefix.value_at(0.25) == path.value_at(0.25));
  CHECK_THROWS_AS(prefix.value_at(0.515625), PrefixReadError);
  CHECK_THROWS_AS(prefix.value_at(1.0), PrefixReadError);
  // Off-grid below the cutoff is an off-grid error, not a prefix violation.
  CHECK_THROWS_AS(prefix.value_at(0.1), OffGridError);
  // The cutoff itself must be a knot.
  CHECK_THROWS_AS(PathPrefix(path, 0.3), OffGridError);
}

TEST_CASE("eval_simple follows the half-open interval convention") {
  const WienerPath path = make_path();
  const SimpleProcess sp = make_step_process();
  CHECK(eval_simple(sp, 0.0, path) == 2.0);       // indicator at {0}
  CHECK(eval_simple(sp, 0.125, path) == 1.0);     // inside (0, 0.25]
  CHECK(eval_simple(sp, 0.25, path) == 1.0);      // right endpoint included
  CHECK(eval_simple(sp, 0.3125, path) == -3.0);   // inside (0.25, 0.5]
  CHECK(eval_simple(sp, 1.0, path) == 5.0);
  CHECK(eval_simple(sp, 1.5, path) == 0.0);       // past the last knot
  CHECK_THROWS_AS(eval_simple(sp, -0.1, path), UsageError);
}

TEST_CASE("eval_simple is exactly piecewise constant") {
  const WienerPath path = make_path();
  // Coefficients that actually read the path, to rule out accidental
  // dependence on the evaluation time.
  const SimpleProcess sp(
      TimeGrid({0.0, 0.25, 0.5, 1.0}), 0.0,
      {[](const PathPrefix& p) { return p.value_at(0.0); },
       [](const PathPrefix& p) { return std::sin(p.value_at(0.25)); },
       [](const PathPrefix& p) { return p.value_at(0.5) * p.value_at(0.25); }});
  const double ts[] = {0.2501, 0.26, 0.3, 0.49, 0.5};
  for (double u : ts) {
    CHECK(eval_simple(sp, u, path) == eval_simple(sp, 0.3, path));
  }
}

TEST_CASE("eval_simple_right_limit samples the interval ahead") {
  const WienerPath path = make_path();
  const SimpleProcess sp = make_step_process();
  CHECK(eval_simple_right_limit(sp, 0.0, path) == 1.0);
  CHECK(eval_simple_right_limit(sp, 0.25, path) == -3.0);
  CHECK(eval_simple_right_limit(sp, 0.3, path) == -3.0);
  CHECK(eval_simple_right_limit(sp, 1.0, path) == 0.0);  // support ends at 1
}

TEST_CASE("integrand_from_simple uses the right-limit convention") {
  const auto sp = std::make_shared<const SimpleProcess>(make_step_process());
  const IntegrandFunctional f = integrand_from_simple(sp);
  const WienerPath path = make_path();
  CHECK(f(0.0, PathPrefix(path, 0.0)) == 1.0);
  CHECK(f(0.25, PathPrefix(path, 0.25)) == -3.0);
  CHECK(f(0.75, PathPrefix(path, 0.75)) == 5.0);
  CHECK(f(1.0, PathPrefix(path, 1.0)) == 0.0);
}

TEST_CASE("missing prefix knots surface as off-grid errors") {
  // Process knots at times the path grid does not carry.
  const WienerPath path = make_path(2);  // knots 0, 0.25, 0.5, 0.75, 1
  const SimpleProcess sp(TimeGrid({0.0, 0.3, 0.6}), 0.0,
                         {[](const PathPrefix& p) { return p.value_at(0.0); },
                          [](const PathPrefix& p) { return p.value_at(0.3); }});
  CHECK_THROWS_AS(eval_simple(sp, 0.5, path), OffGridError);
}

TEST_CASE("built-in integrand catalog carries the right flags") {
  const auto& catalog = integrand_catalog();
  REQUIRE(catalog.size() == 4);
  CHECK(catalog[0].name == "const");
  CHECK(catalog[0].h2);
  CHECK(make_integrand("wiener").h2_claim);
  CHECK(make_integrand("sin-of-w").h2_claim);
  const IntegrandFunctional expw = make_integrand("exp-w-squared");
  CHECK_FALSE(expw.h2_claim);  // E exp(2 W_s^2) diverges for s >= 1/4
  CHECK(expw.pathwise_continuous_claim);
  CHECK_THROWS_AS(make_integrand("nope"), UsageError);

  const WienerPath path = make_path();
  const PathPrefix prefix(path, 0.5);
  const double w = path.value_at(0.5);
  CHECK(make_integrand("const", 3.5)(0.5, prefix) == 3.5);
  CHECK(make_integrand("wiener")(0.5, prefix) == w);
  CHECK(make_integrand("sin-of-w")(0.5, prefix) == std::sin(w));
  CHECK(make_integrand("exp-w-squared")(0.5, prefix) == std::exp(w * w));
}

TEST_CASE("adaptedness probe passes prefix-measurable functionals") {
  const WienerPath path = make_path();
  const AdaptednessReport report =
      probe_adaptedness(make_wiener_integrand(), 0.5, path, 32, 99);
  CHECK(report.passed);
  CHECK_FALSE(report.prefix_violation);
  CHECK(report.evaluations == 33);
}

TEST_CASE("adaptedness probe reports a horizon reader as a violation") {
  const WienerPath path = make_path();
  const IntegrandFunctional peeker{
      "peeker",
      [](double, const PathPrefix& p) { return p.value_at(1.0); },
      false,
      false};
  const AdaptednessReport report = probe_adaptedness(peeker, 0.5, path, 8, 99);
  CHECK_FALSE(report.passed);
  CHECK(report.prefix_violation);
}

TEST_CASE("coefficients of sampled simple processes are adapted") {
  const WienerPath path = make_path(6);
  const IntegrandFunctional f = make_sin_of_w_integrand();
  const ApproximationScheme scheme(1.0, 4, 4, TruncationSchedule::none());
  const SimpleProcess sp = approximate(f, 1.0, scheme, 4, path);
  // Each coefficient, probed as a functional frozen at its own cutoff.
  for (std::size_t i = 1; i <= sp.interval_count(); ++i) {
    const double cutoff = sp.knot(i - 1);
    if (cutoff >= path.horizon()) break;
    const IntegrandFunctional coeff_fn{
        "coeff",
        [&sp, i](double, const PathPrefix& p) { return sp.coefficient(i, p); },
        false,
        false};
    const AdaptednessReport report =
        probe_adaptedness(coeff_fn, cutoff, path, 4, 1234 + i);
    CHECK(report.passed);
  }
}

TEST_CASE("truncation keeps a non-h2 integrand's coefficients bounded") {
  const IntegrandFunctional f = make_exp_w_squared_integrand();
  const ApproximationScheme scheme(0.5, 4, 6, TruncationSchedule::auto_for(f));
  for (std::uint64_t p = 0; p < 50; ++p) {
    const WienerPath path = make_path(7, p);
    for (int level = 4; level <= 6; ++level) {
      const SimpleProcess sp = approximate(f, 0.5, scheme, level, path);
      const double bound = scheme.bound(level);
      CHECK(std::fabs(sp.time_zero_value()) <= bound);
      for (std::size_t i = 1; i <= sp.interval_count(); ++i) {
        const double c = sp.coefficient(i, PathPrefix(path, sp.knot(i - 1)));
        CHECK(std::fabs(c) <= bound);
      }
    }
  }
}
