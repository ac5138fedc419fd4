#include <cmath>
#include <memory>
#include <vector>

#include "doctest.h"
#include "ito/errors.hpp"
#include "ito/stats.hpp"
#include "ito/verification.hpp"

using namespace ito;

namespace {
constexpr std::uint64_t kMaster = 0xfeedbeefULL;

PathEnsemble make_ensemble(int level, std::size_t count, double horizon = 1.0) {
  return PathEnsemble(kMaster, TimeGrid::dyadic(level, horizon), count);
}
}  // namespace

TEST_CASE("uniqueness self-agreement: identical schemes give zero diffs") {
  const IntegrandFunctional f = make_sin_of_w_integrand();
  const ApproximationScheme scheme(1.0, 4, 6, TruncationSchedule::none());
  const CheckResult result =
      check_uniqueness(f, 1.0, scheme, scheme, make_ensemble(6, 200), 0.05);
  CHECK(result.passed);
  CHECK(result.statistic == 0.0);
  for (const auto& row : result.diagnostics.rows) {
    CHECK(row[2] == 0.0);  // p_hat of every exceedance
    CHECK(row[4] == 0.0);  // ky_fan
  }
}

TEST_CASE("uniqueness on a simple integrand is exact at every level") {
  // Both schemes reproduce the step process, so the coupled difference is
  // exactly zero path by path.
  const TimeGrid knots = TimeGrid::dyadic(4, 1.0);
  std::vector<SimpleProcess::PrefixFn> coeffs;
  for (std::size_t i = 1; i < knots.size(); ++i) {
    const double left = knots[i - 1];
    coeffs.push_back([left](const PathPrefix& p) { return std::cos(p.value_at(left)); });
  }
  const auto sp = std::make_shared<const SimpleProcess>(
      SimpleProcess(knots, 1.0, std::move(coeffs)));
  const IntegrandFunctional f = integrand_from_simple(sp);
  const ApproximationScheme a(1.0, 4, 7, TruncationSchedule::none());
  const ApproximationScheme b(1.0, 4, 7, TruncationSchedule::linear(50.0));
  const CheckResult result =
      check_uniqueness(f, 1.0, a, b, make_ensemble(7, 200), 0.05);
  CHECK(result.passed);
  CHECK(result.statistic == 0.0);
}

TEST_CASE("uniqueness for wiener: untruncated vs linear truncation agree") {
  // Truncation at L_k = k is inactive once k exceeds the path maxima, so
  // the two constructions coincide on essentially every path.
  const IntegrandFunctional f = make_wiener_integrand();
  const ApproximationScheme a(1.0, 4, 9, TruncationSchedule::none());
  const ApproximationScheme b(1.0, 4, 9, TruncationSchedule::linear(1.0));
  const CheckResult result =
      check_uniqueness(f, 1.0, a, b, make_ensemble(9, 2000), 0.02);
  CHECK(result.passed);
  CHECK(result.statistic < 0.02);
}

TEST_CASE("uniqueness requires matched level counts") {
  const IntegrandFunctional f = make_wiener_integrand();
  const ApproximationScheme a(1.0, 4, 6, TruncationSchedule::none());
  const ApproximationScheme b(1.0, 4, 7, TruncationSchedule::none());
  CHECK_THROWS_AS(check_uniqueness(f, 1.0, a, b, make_ensemble(7, 100), 0.05),
                  UsageError);
}

TEST_CASE("convergence check accepts the wiener integrand at small scale") {
  const IntegrandFunctional f = make_wiener_integrand();
  const ApproximationScheme scheme(1.0, 4, 9, TruncationSchedule::none());
  const CheckResult result =
      check_convergence(f, 1.0, scheme, make_ensemble(9, 2000), 0.05);
  CHECK(result.passed);
  // Final level differs from itself: exactly zero.
  CHECK(result.statistic == 0.0);
  // Ky Fan falls with the level.
  const auto& rows = result.diagnostics.rows;
  CHECK(rows.front()[4] > rows.back()[4]);
}

TEST_CASE("isometry check: unit integrand, wiener integrand, refusal") {
  const PathEnsemble ensemble = make_ensemble(8, 2000);

  const CheckResult unit =
      check_isometry(make_constant_integrand(1.0), 1.0, 8, ensemble);
  CHECK(unit.passed);
  // Both estimators near E W(1)^2 = 1 = int_0^1 1 ds.
  CHECK(unit.diagnostics.rows[0][1] == doctest::Approx(1.0).epsilon(0.1));
  CHECK(unit.diagnostics.rows[0][3] == doctest::Approx(1.0).epsilon(1e-12));

  const CheckResult wiener =
      check_isometry(make_wiener_integrand(), 1.0, 8, ensemble);
  CHECK(wiener.passed);
  // Both estimators near E int_0^1 W^2 ds = 1/2, within 3 SE.
  const auto& row = wiener.diagnostics.rows[0];
  CHECK(std::fabs(row[1] - 0.5) < 3.0 * row[2] + 2e-3);
  CHECK(std::fabs(row[3] - 0.5) < 3.0 * row[4] + 2e-3);

  CHECK_THROWS_AS(
      check_isometry(make_exp_w_squared_integrand(), 0.5, 8, ensemble),
      InapplicableCheckError);
}

TEST_CASE("martingale check on the documented functionals") {
  const PathEnsemble ensemble = make_ensemble(8, 2000);
  const std::vector<PrefixFunctional> gs = {
      {"one", [](const PathPrefix&) { return 1.0; }},
      {"w_s", [](const PathPrefix& p) { return p.value_at(p.cutoff()); }},
      {"sin_w_s", [](const PathPrefix& p) { return std::sin(p.value_at(p.cutoff())); }},
  };
  const CheckResult unit = check_martingale(make_constant_integrand(1.0), 0.5,
                                            1.0, gs, 8, ensemble);
  CHECK(unit.passed);
  const CheckResult wiener =
      check_martingale(make_wiener_integrand(), 0.5, 1.0, gs, 8, ensemble);
  CHECK(wiener.passed);
  CHECK(wiener.diagnostics.row_labels.size() == 3);

  CHECK_THROWS_AS(check_martingale(make_wiener_integrand(), 1.0, 1.0, gs, 8,
                                   ensemble),
                  UsageError);
  CHECK_THROWS_AS(check_martingale(make_wiener_integrand(), 0.5, 1.0, {}, 8,
                                   ensemble),
                  UsageError);
}

TEST_CASE("continuity check: zero integrand is flat, unit matches the path") {
  const PathEnsemble ensemble = make_ensemble(8, 1000);
  const ApproximationScheme scheme(1.0, 4, 8, TruncationSchedule::none());

  const CheckResult zero =
      check_continuity(make_constant_integrand(0.0), 1.0, scheme, ensemble);
  CHECK(zero.passed);
  for (const auto& row : zero.diagnostics.rows) CHECK(row[1] == 0.0);

  const CheckResult unit =
      check_continuity(make_constant_integrand(1.0), 1.0, scheme, ensemble);
  CHECK(unit.passed);
  // The integral of 1 dW is the path itself: its mean max step matches the
  // directly computed path statistic.
  std::vector<double> direct(ensemble.count());
  for_each_path(ensemble, RunMode::kParallel,
                [&](std::size_t i, const WienerPath& path) {
                  const WienerPath coarse = restrict_to(path, scheme.grid(4));
                  double m = 0.0;
                  for (std::size_t j = 1; j < coarse.knot_count(); ++j) {
                    m = std::max(m, std::fabs(coarse.value_index(j) -
                                              coarse.value_index(j - 1)));
                  }
                  direct[i] = m;
                });
  CHECK(unit.diagnostics.rows[0][1] ==
        doctest::Approx(mean(direct)).epsilon(1e-12));
  // Means strictly decrease across levels at this scale.
  const auto& rows = unit.diagnostics.rows;
  for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i][1] < rows[i - 1][1]);
}

TEST_CASE("ito residual identities") {
  const TimeGrid grid = TimeGrid::dyadic(7, 1.0);
  const WienerPath path = sample_path(
      grid, derive_seed(kMaster, 3, StreamPurpose::kPathIncrements));
  const auto funs = ito_test_functions();
  REQUIRE(funs.size() == 3);

  // fun(x) = x cancels interval by interval: exactly zero.
  CHECK(ito_residual(funs[0], 1.0, grid, path) == 0.0);

  // fun(x) = x^2: residual equals sum dW^2 - t exactly (up to rounding).
  double qv = 0.0;
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double d = path.value_index(i) - path.value_index(i - 1);
    qv += d * d;
  }
  CHECK(ito_residual(funs[1], 1.0, grid, path) ==
        doctest::Approx(qv - 1.0).epsilon(1e-10));

  // The per-interval accumulation equals the composed form
  // f(W(t)) - f(0) - I(f'(W))(t) - 1/2 quad(f''(W)).
  const ScalarFunction& expf = funs[2];
  const IntegrandFunctional fprime{
      "exp-w", [](double t, const PathPrefix& p) { return std::exp(p.value_at(t)); },
      true, true};
  const ApproximationScheme scheme(1.0, 7, 7, TruncationSchedule::none());
  const SimpleProcess sp = approximate(fprime, 1.0, scheme, 7, path);
  const double stochastic = integrate_simple(sp, 1.0, path);
  double time_quad = 0.0;
  for (std::size_t i = 1; i < grid.size(); ++i) {
    time_quad += std::exp(path.value_index(i - 1)) * (grid[i] - grid[i - 1]);
  }
  const double composed = std::exp(path.value_at(1.0)) - 1.0 - stochastic -
                          0.5 * time_quad;
  CHECK(ito_residual(expf, 1.0, grid, path) ==
        doctest::Approx(composed).epsilon(1e-10));
}

TEST_CASE("ito lemma check passes for the three test functions") {
  const PathEnsemble ensemble = make_ensemble(10, 1000);
  const ApproximationScheme scheme(1.0, 4, 8, TruncationSchedule::none());
  for (const ScalarFunction& fun : ito_test_functions()) {
    CAPTURE(fun.name);
    const CheckResult result = check_ito_lemma(fun, 1.0, scheme, 10, ensemble);
    CHECK(result.passed);
    if (std::string(fun.name) == "x") {
      CHECK(result.statistic == 0.0);
      CHECK(result.tolerance == 0.0);
    }
  }
  CHECK_THROWS_AS(
      check_ito_lemma(ito_test_functions()[0], 1.0, scheme, 8, ensemble),
      UsageError);
}

TEST_CASE("l2 decay check at small scale") {
  const PathEnsemble ensemble = make_ensemble(12, 500);
  const ApproximationScheme scheme(1.0, 4, 8, TruncationSchedule::none());
  const CheckResult wiener =
      check_l2_decay(make_wiener_integrand(), 1.0, scheme, ensemble);
  CHECK(wiener.passed);

  const CheckResult constant =
      check_l2_decay(make_constant_integrand(2.0), 1.0, scheme, ensemble);
  CHECK(constant.passed);
  for (const auto& row : constant.diagnostics.rows) CHECK(row[1] == 0.0);
}

TEST_CASE("checks are deterministic given (seed, config)") {
  const IntegrandFunctional f = make_wiener_integrand();
  const ApproximationScheme scheme(1.0, 4, 6, TruncationSchedule::none());
  const CheckResult a =
      check_convergence(f, 1.0, scheme, make_ensemble(6, 300), 0.05);
  const CheckResult b =
      check_convergence(f, 1.0, scheme, make_ensemble(6, 300), 0.05);
  CHECK(a.statistic == b.statistic);
  CHECK(a.diagnostics.rows == b.diagnostics.rows);
}
