#pragma once

#include <vector>

#include "bubblelab/series.hpp"

namespace bubblelab {

/// One point of the next-return versus current-return scatter. Points on the
/// diagonal (next == current) mean constant growth; above it, accelerating.
struct ScatterPoint {
  long t;  // current return is from t-1 to t; next return from t to t+1
  double current;
  double next;

  double above_diagonal() const noexcept { return next - current; }
};

enum class ScatterBasis { Excess, Price };

/// Discrete-return scatter of the excess price. Only consecutive triples with
/// strictly positive excess contribute.
std::vector<ScatterPoint> return_scatter(const ExcessSeries& excess);

/// Discrete-return scatter of raw prices.
std::vector<ScatterPoint> return_scatter(const PriceSeries& prices);

}  // namespace bubblelab
