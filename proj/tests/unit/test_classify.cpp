#include <gtest/gtest.h>

#include <cmath>

#include "bubblelab/classify.hpp"
#include "bubblelab/growth_models.hpp"
#include "support/scenarios.hpp"

namespace {

using namespace bubblelab;

const ExperimentParams kParams;

PriceSeries constant(double p, int n, long t0 = 0) { return PriceSeries(t0, Eigen::VectorXd::Constant(n, p)); }

PriceSeries table_feedback_prices() {
  return price_series(iterate(ModelParams{PriceFeedback<double>{std::log(1.09), 1e-4}, 60.0}, 23), kParams);
}

PriceSeries rational(double growth, double amp, int last) {
  Eigen::VectorXd v(last + 1);
  for (int t = 0; t <= last; ++t) v(t) = 60.0 + amp * std::pow(1.0 + growth, double(t));
  return PriceSeries(0, v);
}

TEST(DetectWindow, Examples) {
  EXPECT_FALSE(detect_bubble_window(constant(60, 30), kParams));
  // p̄_0 = 60 is already above the fundamental, so the run starts at t = 0.
  EXPECT_EQ(detect_bubble_window(table_feedback_prices(), kParams), (Window{0, 23}));

  Eigen::VectorXd v = Eigen::VectorXd::Constant(20, 55.0);
  v.segment(8, 3) << 62, 65, 70;
  EXPECT_FALSE(detect_bubble_window(PriceSeries(0, v), kParams));
}

TEST(DetectWindow, LongestRisingRunWins) {
  Eigen::VectorXd v = Eigen::VectorXd::Constant(40, 50.0);
  v.segment(2, 6) << 61, 62, 63, 64, 65, 66;
  v.segment(10, 8) << 70, 72, 75, 80, 90, 100, 120, 150;
  v.segment(20, 12) << 90, 88, 86, 84, 82, 80, 78, 76, 74, 72, 70, 68;  // falling: excluded
  EXPECT_EQ(detect_bubble_window(PriceSeries(5, v), kParams), (Window{15, 22}));
}

TEST(Classify, ErraticAndTooShort) {
  const auto flat = classify_series(constant(60, 30), kParams);
  EXPECT_EQ(flat.label, BubbleLabel::Erratic);
  EXPECT_FALSE(flat.bubble_window);

  Eigen::VectorXd v = Eigen::VectorXd::Constant(20, 55.0);
  v.segment(5, 6) << 61, 63, 66, 70, 75, 81;
  const auto short_run = classify_series(PriceSeries(0, v), kParams);
  EXPECT_EQ(short_run.label, BubbleLabel::TooShort);
  EXPECT_EQ(short_run.bubble_window, (Window{5, 10}));
}

TEST(Classify, NoiseFreeExponentialIsRational) {
  const auto verdict = classify_series(rational(0.1, 5.0, 25), kParams);
  EXPECT_EQ(verdict.label, BubbleLabel::RationalExponential);
  EXPECT_LT(verdict.price_fraction, 0.2);
  EXPECT_LT(verdict.return_fraction, 0.2);
  ASSERT_TRUE(verdict.rational_fit);
  EXPECT_NEAR(verdict.rational_fit->growth_rate, 0.1, 1e-9);
  EXPECT_TRUE(verdict.rational_fit->exceeds(0.05));
}

TEST(Classify, NoiseFreePriceFeedbackIsAnchoringOnPrice) {
  const auto verdict = classify_series(table_feedback_prices(), kParams);
  EXPECT_EQ(verdict.label, BubbleLabel::AnchoringOnPrice);
  EXPECT_EQ(verdict.price_fraction, 1.0);
}

TEST(Classify, DecisionRuleTies) {
  // Explicit window; equal fractions go to the price model.
  const auto p = table_feedback_prices();
  ClassifyThresholds strict;
  strict.theta = 2.0;  // unreachable: both fractions below it
  EXPECT_EQ(classify_window(p, kParams, {0, 23}, strict).label, BubbleLabel::RationalExponential);
}

TEST(Classify, ShiftInvariance) {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const auto p = scenarios::prices(scenarios::return_feedback(), scenarios::kSeedBase + seed, kParams);
    const auto base = classify_series(p, kParams);
    const auto moved = classify_series(p.shifted(17), kParams);
    EXPECT_EQ(base.label, moved.label);
    EXPECT_EQ(base.price_fraction, moved.price_fraction);
    EXPECT_EQ(base.return_fraction, moved.return_fraction);
    ASSERT_TRUE(base.bubble_window && moved.bubble_window);
    EXPECT_EQ(base.bubble_window->start + 17, moved.bubble_window->start);
  }
}

TEST(Classify, Deterministic) {
  const auto p = scenarios::prices(scenarios::price_feedback(), scenarios::kSeedBase, kParams);
  const auto a = classify_series(p, kParams);
  ClassifyThresholds threaded;
  threaded.threads = 4;
  const auto b = classify_series(p, kParams, threaded);
  EXPECT_EQ(a.label, b.label);
  EXPECT_EQ(a.price_fraction, b.price_fraction);
  EXPECT_EQ(a.return_fraction, b.return_fraction);
}

TEST(Classify, ScaleConsistency) {
  const auto ex = scenarios::excess(scenarios::price_feedback(), scenarios::kSeedBase + 5);
  for (double c : {0.5, 2.0, 10.0, 0.125}) {
    const ExcessSeries scaled(ex.t0(), ex.values() * c);
    const auto base_grid = sweep(ex, ModelTag::Price, SweepBounds::covering({0, 20}));
    const auto scaled_grid = sweep(scaled, ModelTag::Price, SweepBounds::covering({0, 20}));
    const auto base_ret = sweep(ex, ModelTag::Return, SweepBounds::covering({0, 20}));
    const auto scaled_ret = sweep(scaled, ModelTag::Return, SweepBounds::covering({0, 20}));
    for (const auto& [key, cell] : base_grid.cells()) {
      const auto& other = *scaled_grid.find(key.first, key.second)->fit;
      EXPECT_NEAR(other.b * c, cell.fit->b, 1e-12 * std::fabs(cell.fit->b) + 1e-15);
      EXPECT_NEAR(other.t_stat_b(), cell.fit->t_stat_b(), 1e-9 * std::fabs(cell.fit->t_stat_b()));
      EXPECT_NEAR(other.a, cell.fit->a, 1e-12);
    }
    for (const auto& [key, cell] : base_ret.cells()) {
      const auto& other = *scaled_ret.find(key.first, key.second)->fit;
      EXPECT_NEAR(other.a, cell.fit->a, 1e-12);
      EXPECT_NEAR(other.b, cell.fit->b, 1e-11);
      EXPECT_NEAR(other.se_b, cell.fit->se_b, 1e-11);
    }
  }
}

TEST(Classify, Names) {
  EXPECT_EQ(to_string(BubbleLabel::AnchoringOnPrice), "anchoring_on_price");
  EXPECT_EQ(describe(BubbleLabel::AnchoringOnPrice), "anchoring on price");
  EXPECT_EQ(to_string(BubbleLabel::RationalExponential), "rational_exponential");
}

}  // namespace
