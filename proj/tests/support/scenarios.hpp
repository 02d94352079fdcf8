#pragma once

// Seeded synthetic bubbles shared by the Monte Carlo tests. Seeds run
// kSeedBase, kSeedBase + 1, ...; the list is fixed so every run is reproducible.

#include <cmath>
#include <cstdint>

#include "bubblelab/growth_models.hpp"

namespace scenarios {

inline constexpr std::uint64_t kSeedBase = 20240001;

struct Scenario {
  bubblelab::ModelParams model;
  double sigma;
  int steps;
};

// Feedback parameters and starting excess of the comparison table, with log-growth noise.
inline Scenario price_feedback() {
  return {{bubblelab::PriceFeedback<double>{std::log(1.09), 1e-4}, 60.0}, 0.01, 20};
}

// Starts well above the return fixed point a/(1-b) = 0.05 so the lagged
// return regressor spans a range wider than the noise.
inline Scenario return_feedback() {
  return {{bubblelab::ReturnFeedback<double>{0.02, 0.6, 0.5}, 60.0}, 0.01, 20};
}

inline Scenario exponential() { return {{bubblelab::Exponential<double>{std::log(1.1)}, 60.0}, 0.01, 20}; }

inline bubblelab::ExcessSeries excess(const Scenario& s, std::uint64_t seed) {
  bubblelab::Rng rng(seed);
  return bubblelab::iterate_with_noise(s.model, s.steps, s.sigma, rng);
}

inline bubblelab::PriceSeries prices(const Scenario& s, std::uint64_t seed,
                                     const bubblelab::ExperimentParams& params = {}) {
  return bubblelab::price_series(excess(s, seed), params);
}

}  // namespace scenarios
