#include "bubblelab/ols.hpp"

#include <array>
#include <mutex>
#include <string>

namespace bubblelab {

std::string_view to_string(ModelTag tag) {
  switch (tag) {
    case ModelTag::Generic: return "generic";
    case ModelTag::Price: return "price";
    case ModelTag::Return: return "return";
    case ModelTag::Rational: return "rational";
  }
  return "generic";
}

std::string_view to_string(ConfidenceMode mode) {
  return mode == ConfidenceMode::TwoSided ? "two-sided" : "one-sided";
}

ConfidenceMode parse_confidence_mode(std::string_view text) {
  if (text == "two-sided") return ConfidenceMode::TwoSided;
  if (text == "one-sided") return ConfidenceMode::OneSided;
  throw Error(ErrorKind::InvalidConfig, "confidence must be 'two-sided' or 'one-sided', got '" + std::string(text) + "'");
}

double critical_t(ConfidenceMode mode, long df) {
  // Sweeps ask for the same handful of small df values thousands of times.
  constexpr long kCached = 256;
  static std::array<std::array<double, kCached>, 2> cache{};
  static std::once_flag once;
  std::call_once(once, [] {
    for (long d = 1; d < kCached; ++d) {
      cache[0][d] = t_quantile(0.975, static_cast<double>(d));
      cache[1][d] = t_quantile(0.95, static_cast<double>(d));
    }
  });
  if (df < 1) throw Error(ErrorKind::TooFewPoints, "confidence bounds need df >= 1");
  const int which = mode == ConfidenceMode::TwoSided ? 0 : 1;
  if (df < kCached) return cache[which][df];
  return t_quantile(which == 0 ? 0.975 : 0.95, static_cast<double>(df));
}

}  // namespace bubblelab
