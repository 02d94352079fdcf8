#include "bubblelab/diagnostics.hpp"

namespace bubblelab {
namespace {

std::vector<ScatterPoint> scatter(long t0, const Eigen::VectorXd& v) {
  std::vector<ScatterPoint> points;
  for (Eigen::Index i = 1; i + 1 < v.size(); ++i) {
    if (!(v(i - 1) > 0.0 && v(i) > 0.0 && v(i + 1) > 0.0)) continue;
    points.push_back({t0 + i, v(i) / v(i - 1) - 1.0, v(i + 1) / v(i) - 1.0});
  }
  return points;
}

}  // namespace

std::vector<ScatterPoint> return_scatter(const ExcessSeries& excess) { return scatter(excess.t0(), excess.values()); }

std::vector<ScatterPoint> return_scatter(const PriceSeries& prices) { return scatter(prices.t0(), prices.values()); }

}  // namespace bubblelab
