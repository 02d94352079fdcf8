#pragma once

namespace bubblelab {

/// Regularized incomplete beta I_x(a, b).
double incomplete_beta(double a, double b, double x);

/// Student-t CDF with `df` degrees of freedom (df may be fractional).
double t_cdf(double t, double df);

/// Inverse of t_cdf. Requires 0 < p < 1 and df >= 1; absolute error well
/// below 1e-8 across the range used for confidence bounds.
double t_quantile(double p, double df);

}  // namespace bubblelab
