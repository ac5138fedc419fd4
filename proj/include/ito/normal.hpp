#pragma once

namespace ito {

// Standard normal distribution function Phi(x).
double normal_cdf(double x);

// Inverse of normal_cdf for u in (0,1). Wichura's PPND16 rational
// approximation (Applied Statistics AS 241), accurate to full double
// precision over the whole range. Throws UsageError outside (0,1).
double inverse_normal_cdf(double u);

}  // namespace ito
