#pragma once

#include <Eigen/Core>

#include <cmath>
#include <string>
#include <utility>

#include "bubblelab/errors.hpp"

namespace bubblelab {

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// Smallest calibration window, in price points. Four return observations
/// leave two degrees of freedom for a two-parameter fit.
inline constexpr int kDefaultMinWindow = 5;

/// Market constants of the learning-to-forecast experiment.
struct ExperimentParams {
  double r = 0.05;         // interest rate per period
  double dividend = 3.00;  // D
  int traders = 6;         // H
  double p_min = 0.0;
  double p_max = 1000.0;

  void validate() const;
  double fundamental() const { return dividend / r; }
  double clamp(double price) const;
  bool in_range(double price) const { return price >= p_min && price <= p_max; }
};

/// p^f = D / r.
double fundamental_price(const ExperimentParams& params);

struct PriceTag {};
struct ExcessTag {};

/// A contiguous, integer-indexed series. Immutable after construction.
template <typename Scalar, typename Tag>
class BasicSeries {
public:
  using scalar_type = Scalar;
  using vector_type = Vector<Scalar>;

  BasicSeries(long t0, vector_type values) : t0_(t0), values_(std::move(values)) {
    if (values_.size() < 1) throw Error(ErrorKind::InvalidArgument, "series must hold at least one value");
  }

  long t0() const noexcept { return t0_; }
  long t_last() const noexcept { return t0_ + static_cast<long>(values_.size()) - 1; }
  Eigen::Index size() const noexcept { return values_.size(); }
  const vector_type& values() const noexcept { return values_; }

  bool contains(long t) const noexcept { return t >= t0_ && t <= t_last(); }
  /// Value at absolute time index `t`.
  Scalar at(long t) const { return values_(offset(t)); }
  Eigen::Index offset(long t) const {
    if (!contains(t)) throw Error(ErrorKind::InvalidArgument, "time index outside series", t);
    return static_cast<Eigen::Index>(t - t0_);
  }

  /// Copy of the closed range [start, end].
  BasicSeries slice(long start, long end) const {
    if (end < start) throw Error(ErrorKind::InvalidArgument, "empty slice");
    return BasicSeries(start, values_.segment(offset(start), end - start + 1));
  }

  /// Same values with the time axis shifted by `dt`.
  BasicSeries shifted(long dt) const { return BasicSeries(t0_ + dt, values_); }

private:
  long t0_;
  vector_type values_;
};

template <typename Scalar>
using PriceSeriesT = BasicSeries<Scalar, PriceTag>;
template <typename Scalar>
using ExcessSeriesT = BasicSeries<Scalar, ExcessTag>;

using PriceSeries = PriceSeriesT<double>;
using ExcessSeries = ExcessSeriesT<double>;

enum class ReturnKind { Discrete, LogExcess };

/// Returns indexed by the later endpoint: value at t is computed from (t-1, t).
template <typename Scalar>
struct ReturnSeriesT {
  long t0;
  Vector<Scalar> values;
  ReturnKind kind;

  Eigen::Index size() const noexcept { return values.size(); }
};
using ReturnSeries = ReturnSeriesT<double>;

/// Inclusive calibration window [start, end].
struct Window {
  long start = 0;
  long end = 0;

  long length() const noexcept { return end - start + 1; }
  bool admissible(int min_window = kDefaultMinWindow) const noexcept { return length() >= min_window; }
  friend bool operator==(const Window&, const Window&) = default;
};

std::string to_string(const Window& window);

/// Rejects prices outside the admissible range, reporting the first offender.
void check_price_range(const PriceSeries& prices, const ExperimentParams& params);

template <typename Scalar>
ExcessSeriesT<Scalar> excess_series(const PriceSeriesT<Scalar>& prices, const ExperimentParams& params) {
  const auto pf = static_cast<Scalar>(fundamental_price(params));
  return ExcessSeriesT<Scalar>(prices.t0(), (prices.values().array() - pf).matrix());
}

template <typename Scalar>
PriceSeriesT<Scalar> price_series(const ExcessSeriesT<Scalar>& excess, const ExperimentParams& params) {
  const auto pf = static_cast<Scalar>(fundamental_price(params));
  return PriceSeriesT<Scalar>(excess.t0(), (excess.values().array() + pf).matrix());
}

template <typename Scalar>
ReturnSeriesT<Scalar> discrete_returns(const PriceSeriesT<Scalar>& prices) {
  const auto& p = prices.values();
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    if (!(p(i) > Scalar(0))) {
      throw Error(ErrorKind::InvalidArgument, "discrete returns need strictly positive prices", prices.t0() + i);
    }
  }
  const Eigen::Index n = p.size() - 1;
  Vector<Scalar> out = (p.tail(n).array() / p.head(n).array() - Scalar(1)).matrix();
  return {prices.t0() + 1, std::move(out), ReturnKind::Discrete};
}

/// Discrete returns of any excess series; used by the return-diagonal diagnostic.
template <typename Scalar>
ReturnSeriesT<Scalar> discrete_returns(const ExcessSeriesT<Scalar>& excess) {
  return discrete_returns(PriceSeriesT<Scalar>(excess.t0(), excess.values()));
}

template <typename Scalar>
ReturnSeriesT<Scalar> log_excess_returns(const ExcessSeriesT<Scalar>& excess) {
  const auto& x = excess.values();
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (!(x(i) > Scalar(0))) {
      throw Error(ErrorKind::NonPositiveExcess, "excess price must be strictly positive (outside bubble regime)",
                  excess.t0() + i);
    }
  }
  const Eigen::Index n = x.size() - 1;
  Vector<Scalar> out = (x.tail(n).array() / x.head(n).array()).log().matrix();
  return {excess.t0() + 1, std::move(out), ReturnKind::LogExcess};
}

}  // namespace bubblelab
