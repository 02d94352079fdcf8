#pragma once

#include <cmath>

#include "bubblelab/ols.hpp"
#include "bubblelab/series.hpp"

namespace bubblelab {

namespace detail {

template <typename Scalar>
Vector<Scalar> positive_window(const ExcessSeriesT<Scalar>& excess, const Window& window) {
  if (window.end < window.start) throw Error(ErrorKind::InvalidArgument, "window end precedes start");
  if (!excess.contains(window.start) || !excess.contains(window.end)) {
    throw Error(ErrorKind::InvalidArgument, "window " + to_string(window) + " outside series");
  }
  Vector<Scalar> v = excess.values().segment(excess.offset(window.start), window.length());
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (!(v(i) > Scalar(0))) {
      throw Error(ErrorKind::NonPositiveExcess, "excess price not positive inside window " + to_string(window),
                  window.start + i);
    }
  }
  return v;
}

}  // namespace detail

/// Anchoring on price: regress log(p̄_t / p̄_{t-1}) on p̄_{t-1} for t in
/// (start, end]. Uses only data inside the window.
template <typename Scalar>
BasicOlsFit<Scalar> fit_price_model(const ExcessSeriesT<Scalar>& excess, const Window& window,
                                    ConfidenceMode mode = ConfidenceMode::TwoSided) {
  const Vector<Scalar> v = detail::positive_window(excess, window);
  const Eigen::Index m = v.size() - 1;
  if (m < 3) throw Error(ErrorKind::TooFewPoints, "price model needs >= 3 return observations in " + to_string(window));
  const Vector<Scalar> growth = (v.tail(m).array() / v.head(m).array()).log().matrix();
  auto fit = ols2(v.head(m), growth, mode);
  fit.model = ModelTag::Price;
  return fit;
}

/// Anchoring on return: regress log(p̄_{t+1}/p̄_t) on log(p̄_t/p̄_{t-1}),
/// all three points inside the window.
template <typename Scalar>
BasicOlsFit<Scalar> fit_return_model(const ExcessSeriesT<Scalar>& excess, const Window& window,
                                     ConfidenceMode mode = ConfidenceMode::TwoSided) {
  const Vector<Scalar> v = detail::positive_window(excess, window);
  const Eigen::Index m = v.size() - 1;
  if (m - 1 < 3) {
    throw Error(ErrorKind::TooFewPoints, "return model needs >= 3 lagged return pairs in " + to_string(window));
  }
  const Vector<Scalar> growth = (v.tail(m).array() / v.head(m).array()).log().matrix();
  auto fit = ols2(growth.head(m - 1), growth.tail(m - 1), mode);
  fit.model = ModelTag::Return;
  return fit;
}

/// Constant-rate bubble p_t = a1 (1 + r̂)^t + b1, fitted as a log-linear trend
/// of p_t - b1 on the absolute time index.
template <typename Scalar>
struct RationalBubbleFitT {
  Scalar growth_rate;  // r̂
  Scalar amplitude;    // a1
  Scalar offset;       // b1 (held fixed)
  Scalar growth_rate_lower;
  Scalar growth_rate_upper;
  BasicOlsFit<Scalar> log_fit;

  /// r̂ significantly above `r` at the fit's confidence level.
  bool exceeds(Scalar r) const { return growth_rate_lower > r; }
};
using RationalBubbleFit = RationalBubbleFitT<double>;

template <typename Scalar>
RationalBubbleFitT<Scalar> fit_rational_bubble(const PriceSeriesT<Scalar>& prices, const Window& window,
                                               Scalar b1_fixed = Scalar(60),
                                               ConfidenceMode mode = ConfidenceMode::TwoSided) {
  const ExcessSeriesT<Scalar> shifted(prices.t0(), (prices.values().array() - b1_fixed).matrix());
  const Vector<Scalar> v = detail::positive_window(shifted, window);
  const Vector<Scalar> t = Vector<Scalar>::LinSpaced(v.size(), Scalar(window.start), Scalar(window.end));
  auto fit = ols2(t, Vector<Scalar>(v.array().log().matrix()), mode);
  fit.model = ModelTag::Rational;

  // Upper bound shares the lower bound's half-width.
  const Scalar half_width = fit.b - fit.b_lower;
  return {std::exp(fit.b) - Scalar(1), std::exp(fit.a), b1_fixed, std::exp(fit.b_lower) - Scalar(1),
          std::exp(fit.b + half_width) - Scalar(1), fit};
}

}  // namespace bubblelab
