#pragma once

// Student-t quantiles by bisection on a CDF obtained from composite Simpson
// quadrature of the density. Independent of the incomplete-beta route.

#include <cmath>

namespace oracle {

inline long double t_density(long double t, long double df) {
  const long double log_norm =
      std::lgamma((df + 1) / 2) - std::lgamma(df / 2) - 0.5L * std::log(df * 3.14159265358979323846264338327950288L);
  return std::exp(log_norm - (df + 1) / 2 * std::log1p(t * t / df));
}

inline long double t_cdf(long double t, long double df, int intervals = 20000) {
  const long double sign = t < 0 ? -1 : 1;
  const long double u = std::fabs(t);
  const long double h = u / intervals;
  long double sum = t_density(0, df) + t_density(u, df);
  for (int i = 1; i < intervals; ++i) sum += (i % 2 ? 4 : 2) * t_density(i * h, df);
  return 0.5L + sign * sum * h / 3;
}

inline double t_quantile(double p, double df) {
  long double lo = -200, hi = 200;
  for (int i = 0; i < 80; ++i) {
    const long double mid = (lo + hi) / 2;
    if (t_cdf(mid, df) < p) lo = mid; else hi = mid;
  }
  return static_cast<double>((lo + hi) / 2);
}

}  // namespace oracle
