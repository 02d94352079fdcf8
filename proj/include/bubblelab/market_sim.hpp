#pragma once

#include <Eigen/Core>

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "bubblelab/random.hpp"
#include "bubblelab/series.hpp"

namespace bubblelab {

// Forecasting rules. Each agent submits p^h_{t+1} at period t seeing prices
// only through t-1.
namespace agents {

struct Fundamentalist {};
struct RationalBubble {
  double growth_rate;  // r̂
  double amplitude;    // a1
  double offset;       // b1
};
struct PriceAnchor {
  double a;
  double b;
};
struct ReturnAnchor {
  double a;
  double b;
};
struct Naive {};
struct Noise {
  double sigma;
};

}  // namespace agents

using AgentSpec = std::variant<agents::Fundamentalist, agents::RationalBubble, agents::PriceAnchor,
                               agents::ReturnAnchor, agents::Naive, agents::Noise>;

std::string to_string(const AgentSpec& spec);
void validate(const AgentSpec& spec);

/// Quadratic scoring rule: max{max_payoff - scale (p - p^h)^2, 0}.
struct RewardRule {
  double max_payoff = 1300.0;
  double scale = 1300.0 / 49.0;
};

struct SimConfig {
  ExperimentParams params;
  std::vector<AgentSpec> agents;
  int horizon = 50;
  std::uint64_t seed = 0;
  double return_noise_sigma = 0.0;  // sd of Gaussian noise on each log-forecast
  double mistrade_prob = 0.0;       // per agent-period chance of a decimal shift
  std::array<double, 2> initial_prices{60.0, 60.0};  // p_{-2}, p_{-1}
  RewardRule reward;

  void validate() const;
};

/// Simulated periods are t = 0 .. horizon-1. Forecast row t holds the
/// forecasts p^h_{t+1} submitted at t (which form p_t). Payoff row k scores
/// period t = k + 1 against the forecasts submitted at t - 1.
struct SimResult {
  PriceSeries prices;
  Eigen::MatrixXd forecasts;
  Eigen::MatrixXd payoffs;
  long payoff_t0 = 1;
  std::string rng_algorithm;
  std::uint64_t seed = 0;
};

/// (mean(forecasts) + D) / (1 + r), clamped to the admissible range.
double clearing_price(std::span<const double> forecasts, const ExperimentParams& params);

double score_forecast(double realized, double forecast, const RewardRule& rule = {});

/// Forecast for t+1 submitted at period `t`; `history` ends at t-1.
/// Feedback agents extrapolate two steps with their one-step growth rate
/// frozen at the last observed state, and act as fundamentalists when the
/// excess prices they need are not strictly positive.
double agent_forecast(const AgentSpec& spec, const PriceSeries& history, long t, const ExperimentParams& params,
                      Rng& rng);

enum class DecimalShift { Up, Down };

/// x10 or x0.1, clamped to the admissible range.
double shift_decimal(double forecast, DecimalShift shift, const ExperimentParams& params);

/// With probability `prob` applies an equiprobable decimal shift; otherwise
/// returns the forecast untouched. Draws nothing when prob == 0.
double inject_mistrade(double forecast, Rng& rng, double prob, const ExperimentParams& params);

SimResult run(const SimConfig& config);

}  // namespace bubblelab
