#pragma once

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string_view>

#include "bubblelab/errors.hpp"
#include "bubblelab/student_t.hpp"

namespace bubblelab {

enum class ModelTag { Generic, Price, Return, Rational };

std::string_view to_string(ModelTag tag);

/// Which quantile defines the "lower 95% bound": the lower endpoint of the
/// two-sided interval (t_{0.975}) or the one-sided bound (t_{0.95}).
enum class ConfidenceMode { TwoSided, OneSided };

std::string_view to_string(ConfidenceMode mode);
ConfidenceMode parse_confidence_mode(std::string_view text);

/// Critical t value for a 95% level under `mode`.
double critical_t(ConfidenceMode mode, long df);

/// Two-parameter regression y = a + b x with homoskedastic standard errors.
template <typename Scalar>
struct BasicOlsFit {
  Scalar a = 0;
  Scalar b = 0;
  Scalar se_a = 0;
  Scalar se_b = 0;
  Scalar a_lower = 0;
  Scalar b_lower = 0;
  long n = 0;
  long df = 0;
  Scalar r2 = 0;
  Scalar ssr = 0;
  ModelTag model = ModelTag::Generic;
  ConfidenceMode confidence = ConfidenceMode::TwoSided;
  bool perfect_fit = false;  // SSR zero up to rounding of y

  Scalar t_stat_b() const { return b / se_b; }
};

using OlsFit = BasicOlsFit<double>;

/// Least-squares line through (x, y). Works on any pair of Eigen vector
/// expressions with matching scalar type; centred sums keep the estimate
/// accurate when x sits far from zero.
template <typename DerivedX, typename DerivedY>
BasicOlsFit<typename DerivedX::Scalar> ols2(const Eigen::MatrixBase<DerivedX>& x, const Eigen::MatrixBase<DerivedY>& y,
                                            ConfidenceMode mode = ConfidenceMode::TwoSided) {
  using Scalar = typename DerivedX::Scalar;
  static_assert(std::is_same_v<Scalar, typename DerivedY::Scalar>, "x and y must share a scalar type");
  const Eigen::Index n = x.size();
  if (y.size() != n) throw Error(ErrorKind::InvalidArgument, "x and y lengths differ");
  if (n < 3) throw Error(ErrorKind::TooFewPoints, "regression needs at least 3 points, got " + std::to_string(n));

  const auto xc = (x.array() - x.mean()).eval();
  const auto yc = (y.array() - y.mean()).eval();
  const Scalar sxx = xc.square().sum();
  // Zero variance up to rounding of x itself.
  const Scalar x_scale = x.cwiseAbs().maxCoeff();
  const Scalar x_floor = Scalar(64) * std::numeric_limits<Scalar>::epsilon() * x_scale;
  if (!(sxx > Scalar(n) * x_floor * x_floor)) {
    throw Error(ErrorKind::DegenerateRegressor, "regressor has zero variance");
  }

  BasicOlsFit<Scalar> fit;
  fit.n = static_cast<long>(n);
  fit.df = fit.n - 2;
  fit.confidence = mode;
  fit.b = (xc * yc).sum() / sxx;
  fit.a = y.mean() - fit.b * x.mean();

  const auto resid = (y.array() - fit.a - fit.b * x.array()).eval();
  fit.ssr = resid.square().sum();
  const Scalar sst = yc.square().sum();
  const Scalar y_scale = y.cwiseAbs().maxCoeff();
  const Scalar y_floor = Scalar(64) * std::numeric_limits<Scalar>::epsilon() * y_scale;
  fit.perfect_fit = fit.ssr <= Scalar(n) * y_floor * y_floor;

  const Scalar s2 = fit.ssr / Scalar(fit.df);
  const Scalar xbar = x.mean();
  fit.se_b = std::sqrt(s2 / sxx);
  fit.se_a = std::sqrt(s2 * (Scalar(1) / Scalar(n) + xbar * xbar / sxx));
  fit.r2 = sst > Scalar(0) ? std::clamp(Scalar(1) - fit.ssr / sst, Scalar(0), Scalar(1)) : Scalar(1);

  const auto tcrit = static_cast<Scalar>(critical_t(mode, fit.df));
  fit.a_lower = fit.a - tcrit * fit.se_a;
  fit.b_lower = fit.b - tcrit * fit.se_b;
  return fit;
}

}  // namespace bubblelab
