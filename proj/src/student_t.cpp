#include "bubblelab/student_t.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "bubblelab/errors.hpp"

namespace bubblelab {
namespace {

// Continued fraction for I_x(a, b) (modified Lentz), valid for x < (a+1)/(a+b+2).
double beta_continued_fraction(double a, double b, double x) {
  constexpr double tiny = 1e-300;
  constexpr double eps = 1e-16;
  constexpr int max_iter = 10000;

  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < tiny) d = tiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= max_iter; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < tiny) d = tiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < tiny) d = tiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < eps) return h;
  }
  throw Error(ErrorKind::InvalidArgument, "incomplete beta continued fraction did not converge");
}

// I_x(a, b) with y = 1 - x supplied separately to keep precision near x = 1.
double incomplete_beta_xy(double a, double b, double x, double y) {
  if (x <= 0.0) return 0.0;
  if (y <= 0.0) return 1.0;
  const double log_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) + b * std::log(y);
  const double front = std::exp(log_front);
  if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_continued_fraction(a, b, x) / a;
  return 1.0 - front * beta_continued_fraction(b, a, y) / b;
}

// P(T > t) for t >= 0.
double upper_tail(double t, double df) {
  const double t2 = t * t;
  const double x = df / (df + t2);
  const double y = t2 / (df + t2);
  return 0.5 * incomplete_beta_xy(0.5 * df, 0.5, x, y);
}

double density(double t, double df) {
  const double log_norm = std::lgamma(0.5 * (df + 1.0)) - std::lgamma(0.5 * df) - 0.5 * std::log(df * std::numbers::pi);
  return std::exp(log_norm - 0.5 * (df + 1.0) * std::log1p(t * t / df));
}

}  // namespace

double incomplete_beta(double a, double b, double x) {
  if (!(a > 0.0) || !(b > 0.0)) throw Error(ErrorKind::InvalidArgument, "incomplete beta needs a, b > 0");
  if (!(x >= 0.0 && x <= 1.0)) throw Error(ErrorKind::InvalidArgument, "incomplete beta needs x in [0, 1]");
  return incomplete_beta_xy(a, b, x, 1.0 - x);
}

double t_cdf(double t, double df) {
  if (!(df > 0.0)) throw Error(ErrorKind::InvalidArgument, "t_cdf needs df > 0");
  if (std::isnan(t)) return t;
  const double tail = upper_tail(std::fabs(t), df);
  return t >= 0.0 ? 1.0 - tail : tail;
}

double t_quantile(double p, double df) {
  if (!(p > 0.0 && p < 1.0)) throw Error(ErrorKind::InvalidArgument, "t_quantile needs 0 < p < 1");
  if (!(df >= 1.0)) throw Error(ErrorKind::InvalidArgument, "t_quantile needs df >= 1");
  if (p == 0.5) return 0.0;

  // Solve P(T > t) = q on t > 0 and reflect.
  const double q = p > 0.5 ? 1.0 - p : p;
  const double sign = p > 0.5 ? 1.0 : -1.0;

  double lo = 0.0;
  double hi = 1.0;
  while (upper_tail(hi, df) > q) {
    lo = hi;
    hi *= 2.0;
    if (!std::isfinite(hi)) throw Error(ErrorKind::InvalidArgument, "t_quantile bracket overflow");
  }

  double t = 0.5 * (lo + hi);
  for (int iter = 0; iter < 200; ++iter) {
    const double f = upper_tail(t, df) - q;  // decreasing in t
    if (f > 0.0) lo = t; else hi = t;
    const double step = f / density(t, df);  // Newton on -(tail) has slope +density
    double next = t + step;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::fabs(next - t) <= 4.0 * std::numeric_limits<double>::epsilon() * std::fmax(1.0, std::fabs(t))) {
      t = next;
      break;
    }
    t = next;
  }
  return sign * t;
}

}  // namespace bubblelab
