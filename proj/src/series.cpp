#include "bubblelab/series.hpp"

#include <algorithm>

namespace bubblelab {

void ExperimentParams::validate() const {
  if (!(r > 0.0) || !std::isfinite(r)) throw Error(ErrorKind::InvalidConfig, "interest rate r must be > 0");
  if (!(dividend >= 0.0) || !std::isfinite(dividend)) throw Error(ErrorKind::InvalidConfig, "dividend D must be >= 0");
  if (traders < 1) throw Error(ErrorKind::InvalidConfig, "trader count H must be >= 1");
  if (!(p_min < p_max)) throw Error(ErrorKind::InvalidConfig, "p_min must be below p_max");
  const double pf = fundamental();
  if (pf < p_min || pf > p_max) throw Error(ErrorKind::InvalidConfig, "fundamental price D/r outside [p_min, p_max]");
}

double ExperimentParams::clamp(double price) const { return std::clamp(price, p_min, p_max); }

double fundamental_price(const ExperimentParams& params) {
  if (!(params.r > 0.0)) throw Error(ErrorKind::InvalidArgument, "fundamental price needs r > 0");
  return params.dividend / params.r;
}

std::string to_string(const Window& window) {
  return "[" + std::to_string(window.start) + ", " + std::to_string(window.end) + "]";
}

void check_price_range(const PriceSeries& prices, const ExperimentParams& params) {
  const auto& p = prices.values();
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    if (!std::isfinite(p(i)) || !params.in_range(p(i))) {
      throw Error(ErrorKind::OutOfRange, "price " + std::to_string(p(i)) + " outside admissible range",
                  prices.t0() + i);
    }
  }
}

}  // namespace bubblelab
