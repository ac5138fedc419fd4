#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "ito/approximation.hpp"
#include "ito/convergence.hpp"
#include "ito/ensemble.hpp"
#include "ito/integrator.hpp"

namespace ito {

// Numeric table ready for CSV export; row_labels, when non-empty, name
// each row (one per test functional, say).
struct DiagnosticsTable {
  std::vector<std::string> columns;
  std::vector<std::string> row_labels;
  std::vector<std::vector<double>> rows;
};

// Outcome of one check. `passed` is always equivalent to
// statistic <= tolerance; checks whose pass condition includes a trend
// report an infinite statistic when the trend is violated, with the
// detail preserved in `diagnostics`.
struct CheckResult {
  std::string name;
  double statistic = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  DiagnosticsTable diagnostics;
};

// Cross-scheme agreement on coupled paths: both schemes integrate the
// same integrand on the same sample paths, and the per-level differences
// must vanish in probability. This is the desk-scale echo of uniqueness:
// any two constructions satisfying the simple-process formula and the
// convergence property must agree in the limit. Schemes are matched level
// position by level position and need equal level counts.
// statistic = final-level Ky Fan (infinite if the Ky Fan trend rises
// beyond 2 combined SEs anywhere); tolerance = threshold.
CheckResult check_uniqueness(const IntegrandFunctional& f, double t,
                             const ApproximationScheme& scheme_a,
                             const ApproximationScheme& scheme_b,
                             const PathEnsemble& ensemble, double threshold,
                             RunMode mode = RunMode::kParallel);

// Convergence of the level trace to its accepted value: Ky Fan distances
// of I(b_k)(t) - I(b_finest)(t) must fall level over level and end below
// the threshold. statistic/tolerance as in check_uniqueness.
CheckResult check_convergence(const IntegrandFunctional& f, double t,
                              const ApproximationScheme& scheme,
                              const PathEnsemble& ensemble, double threshold,
                              RunMode mode = RunMode::kParallel);

// Ito isometry at one level: mean(I(b_n)(t)^2) against
// mean(int_0^t b_n^2 ds), paired per path. Requires the h2 claim
// (InapplicableCheckError otherwise: a sample mean of a divergent
// expectation would be meaningless, so the check refuses to produce one).
// statistic = |mean difference|; tolerance = 3 SE of the paired mean.
CheckResult check_isometry(const IntegrandFunctional& f, double t, int level,
                           const PathEnsemble& ensemble,
                           RunMode mode = RunMode::kParallel);

// Prefix functional used as a martingale test function g(W restricted to
// [0, s]).
struct PrefixFunctional {
  std::string name;
  std::function<double(const PathPrefix&)> fn;
};

// Orthogonality of integral increments to the past: for each g,
// mean((I(t) - I(s)) * g(prefix_s)) must vanish within 3 SE.
// statistic = worst |mean| / (3 SE) over the g's; tolerance = 1.
CheckResult check_martingale(const IntegrandFunctional& f, double s, double t,
                             std::span<const PrefixFunctional> test_functionals,
                             int level, const PathEnsemble& ensemble,
                             RunMode mode = RunMode::kParallel);

// Path-continuity echo: the ensemble mean of the largest step of the
// integral path must shrink as the grid refines.
// statistic = worst consecutive rise minus 2 combined SEs; tolerance = 0.
CheckResult check_continuity(const IntegrandFunctional& f, double t,
                             const ApproximationScheme& scheme,
                             const PathEnsemble& ensemble,
                             RunMode mode = RunMode::kParallel);

// Twice-differentiable scalar function with its derivatives, for the Ito
// lemma residual check.
struct ScalarFunction {
  std::string name;
  double (*f)(double);
  double (*df)(double);
  double (*ddf)(double);
};

// fun(x) = x, x^2, exp(x): the functions the residual check runs on.
std::span<const ScalarFunction> ito_test_functions();

// Discrete Ito-lemma residual on one grid:
//   R = fun(W(t)) - fun(W(0)) - I(fun'(W))(t) - 1/2 int_0^t fun''(W) ds
// with the stochastic term left-sampled and the time integral by
// left-endpoint quadrature, accumulated interval by interval (fixed
// reduction order; makes fun(x) = x cancel exactly).
double ito_residual(const ScalarFunction& fun, double t, const TimeGrid& grid,
                    const WienerPath& path);

// Ensemble-mean |R| per level must fall with the level and end below a
// threshold calibrated from a finer pilot level (2.5x the pilot mean; the
// asymptotic level-to-level factor is 2 per two levels, so this leaves
// 25% headroom without hiding a broken rate).
// statistic = final scheme-level mean |R| (infinite if the trend rises
// beyond 2 combined SEs); tolerance = the pilot-calibrated threshold.
CheckResult check_ito_lemma(const ScalarFunction& fun, double t,
                            const ApproximationScheme& scheme, int pilot_level,
                            const PathEnsemble& ensemble,
                            RunMode mode = RunMode::kParallel);

// Pathwise L2-error decay of the left-sampled approximations, measured by
// left-endpoint quadrature on the finest grid available from the
// ensemble. Ensemble means must fall strictly level over level; for the
// wiener integrand each mean must also sit within 3 SE of the exact
// expectation of this estimator and the final mean below 1e-2 of the
// first. statistic = worst normalized condition ratio; tolerance = 1.
CheckResult check_l2_decay(const IntegrandFunctional& f, double t,
                           const ApproximationScheme& scheme,
                           const PathEnsemble& ensemble,
                           RunMode mode = RunMode::kParallel);

// Exact expectation of the left-quadrature L2 error for f(s) = W(s):
// sum over quadrature cells of (cell left - covering level knot) * cell
// width. Evaluated by direct enumeration of the two grids; equals
// dt_level/2 - dt_quad/2 in closed form.
double expected_l2_left_quadrature(const TimeGrid& level_grid,
                                   const TimeGrid& quadrature_grid);

}  // namespace ito
