#include <gtest/gtest.h>

#include <array>
#include <cmath>

#include "bubblelab/json_io.hpp"
#include "bubblelab/market_sim.hpp"

namespace {

using namespace bubblelab;

const ExperimentParams kParams;

std::vector<AgentSpec> group(const AgentSpec& a, int n = 6) { return std::vector<AgentSpec>(n, a); }

SimConfig config_with(std::vector<AgentSpec> agents, int horizon = 50, std::uint64_t seed = 1) {
  SimConfig c;
  c.agents = std::move(agents);
  c.horizon = horizon;
  c.seed = seed;
  return c;
}

TEST(ClearingPrice, Examples) {
  const std::array<double, 6> at60{60, 60, 60, 60, 60, 60};
  EXPECT_EQ(clearing_price(at60, kParams), 60.0);
  const std::array<double, 6> cap{1000, 1000, 1000, 1000, 1000, 1000};
  // 1003 / 1.05 = 955.238095238095...
  EXPECT_NEAR(clearing_price(cap, kParams), 955.238095238095238, 1e-9);
  const std::array<double, 6> zero{};
  EXPECT_NEAR(clearing_price(zero, kParams), 2.857142857142857, 1e-12);
}

TEST(ClearingPrice, WrongCount) {
  const std::array<double, 5> five{60, 60, 60, 60, 60};
  try {
    clearing_price(five, kParams);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::WrongForecastCount);
  }
}

TEST(Score, QuadraticRule) {
  EXPECT_EQ(score_forecast(80, 80), 1300.0);
  EXPECT_NEAR(score_forecast(80, 87), 0.0, 1e-10);
  EXPECT_EQ(score_forecast(80, 100), 0.0);
  EXPECT_NEAR(score_forecast(80, 76.5), 975.0, 1e-10);
  EXPECT_NEAR(score_forecast(76.5, 80), 975.0, 1e-10);
}

PriceSeries history(std::initializer_list<double> v, long t_last) {
  Eigen::VectorXd x(v.size());
  Eigen::Index i = 0;
  for (double d : v) x(i++) = d;
  return PriceSeries(t_last - static_cast<long>(v.size()) + 1, x);
}

TEST(AgentForecast, Examples) {
  Rng rng(1);
  EXPECT_EQ(agent_forecast(agents::Fundamentalist{}, history({75, 300}, 4), 5, kParams, rng), 60.0);
  // 60 + 60 exp(2 (ln 1.09 + 0.006)) to 18 digits (mpmath): 132.146585184107229
  EXPECT_NEAR(agent_forecast(agents::PriceAnchor{std::log(1.09), 1e-4}, history({120}, 4), 5, kParams, rng),
              132.146585184107229, 1e-9);
  // 60 + 5 * 1.05^10 = 68.14447313388720703125
  EXPECT_NEAR(agent_forecast(agents::RationalBubble{0.05, 5, 60}, history({60}, 8), 9, kParams, rng),
              68.14447313388720703125, 1e-10);
  EXPECT_EQ(agent_forecast(agents::Naive{}, history({61, 62.5}, 4), 5, kParams, rng), 62.5);
}

TEST(AgentForecast, ReturnAnchorAndFallbacks) {
  Rng rng(1);
  const double f = agent_forecast(agents::ReturnAnchor{0.02, 0.6}, history({70, 80}, 1), 2, kParams, rng);
  EXPECT_NEAR(f, 60 + 20 * std::exp(2 * (0.02 + 0.6 * std::log(2.0))), 1e-10);
  EXPECT_EQ(agent_forecast(agents::ReturnAnchor{0.02, 0.6}, history({50, 80}, 1), 2, kParams, rng), 60.0);
  EXPECT_EQ(agent_forecast(agents::PriceAnchor{0.1, 1e-3}, history({55}, 1), 2, kParams, rng), 60.0);
  EXPECT_EQ(agent_forecast(agents::PriceAnchor{0.5, 0.1}, history({900}, 1), 2, kParams, rng), 1000.0);
}

TEST(AgentForecast, InsufficientHistory) {
  Rng rng(1);
  for (const AgentSpec& spec : {AgentSpec{agents::Naive{}}, AgentSpec{agents::ReturnAnchor{0.1, 0.1}}}) {
    try {
      agent_forecast(spec, history({60}, 0), 1, kParams, rng);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::InsufficientHistory);
    }
  }
}

TEST(AgentForecast, NoiseAgentDrawsAroundFundamental) {
  Rng rng(7);
  double sum = 0;
  for (int i = 0; i < 4000; ++i) sum += agent_forecast(agents::Noise{2.0}, history({60}, 0), 1, kParams, rng);
  EXPECT_NEAR(sum / 4000, 60.0, 0.15);
  EXPECT_EQ(agent_forecast(agents::Noise{0.0}, history({60}, 0), 1, kParams, rng), 60.0);
}

TEST(Mistrade, Examples) {
  Rng rng(3);
  for (double f : {0.0, 12.5, 95.0, 1000.0}) EXPECT_EQ(inject_mistrade(f, rng, 0.0, kParams), f);
  EXPECT_EQ(shift_decimal(95, DecimalShift::Up, kParams), 950.0);
  EXPECT_EQ(shift_decimal(200, DecimalShift::Up, kParams), 1000.0);
  EXPECT_NEAR(shift_decimal(95, DecimalShift::Down, kParams), 9.5, 1e-12);

  int up = 0, down = 0;
  for (int i = 0; i < 2000; ++i) {
    const double f = inject_mistrade(50.0, rng, 1.0, kParams);
    if (f == 500.0) ++up;
    else if (std::fabs(f - 5.0) < 1e-12) ++down;
  }
  EXPECT_EQ(up + down, 2000);
  EXPECT_NEAR(up / 2000.0, 0.5, 0.05);
  EXPECT_THROW(inject_mistrade(50.0, rng, 1.5, kParams), Error);
}

TEST(Run, FundamentalistsStayAtFixedPoint) {
  const auto r = run(config_with(group(agents::Fundamentalist{})));
  ASSERT_EQ(r.prices.size(), 50);
  EXPECT_EQ(r.prices.t0(), 0);
  for (Eigen::Index i = 0; i < 50; ++i) EXPECT_EQ(r.prices.values()(i), 60.0);
  EXPECT_TRUE((r.payoffs.array() == 1300.0).all());
}

TEST(Run, RationalBubbleConfirmsItself) {
  for (double a1 : {0.5, 5.0, 20.0}) {
    const auto r = run(config_with(group(agents::RationalBubble{0.05, a1, 60.0})));
    for (long t = 0; t < 50; ++t) {
      EXPECT_NEAR(r.prices.at(t), 60.0 + a1 * std::pow(1.05, double(t)), 1e-9) << t;
    }
  }
}

TEST(Run, DeterministicWithoutRandomness) {
  const auto agents = std::vector<AgentSpec>{agents::PriceAnchor{0.08, 1e-4}, agents::PriceAnchor{0.09, 1e-4},
                                             agents::ReturnAnchor{0.02, 0.6}, agents::Naive{},
                                             agents::Fundamentalist{}, agents::RationalBubble{0.05, 1, 60}};
  auto c1 = config_with(agents, 40, 1);
  c1.initial_prices = {61, 63};
  auto c2 = c1;
  c2.seed = 99;
  const auto a = run(c1), b = run(c2);
  EXPECT_EQ(a.prices.values(), b.prices.values());
  EXPECT_EQ(a.forecasts, b.forecasts);
  EXPECT_EQ(a.payoffs, b.payoffs);
}

SimConfig noisy_config(std::uint64_t seed) {
  auto c = config_with({agents::PriceAnchor{0.08, 2e-4}, agents::PriceAnchor{0.1, 1e-4}, agents::Naive{},
                        agents::Noise{3}, agents::ReturnAnchor{0.02, 0.6}, agents::Fundamentalist{}},
                       50, seed);
  c.initial_prices = {62, 65};
  c.return_noise_sigma = 0.05;
  c.mistrade_prob = 0.02;
  return c;
}

TEST(Run, Invariants) {
  const double lo = 3.0 / 1.05, hi = 1003.0 / 1.05;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto c = noisy_config(seed);
    const auto r = run(c);
    ASSERT_EQ(r.forecasts.rows(), 50);
    ASSERT_EQ(r.forecasts.cols(), 6);
    ASSERT_EQ(r.payoffs.rows(), 49);
    for (long t = 0; t < 50; ++t) {
      const double p = r.prices.at(t);
      EXPECT_GE(p, lo - 1e-9);
      EXPECT_LE(p, hi + 1e-9);
      const Eigen::VectorXd row = r.forecasts.row(t);
      EXPECT_EQ(p, clearing_price(std::span<const double>(row.data(), 6), c.params));
      EXPECT_TRUE((row.array() >= 0).all() && (row.array() <= 1000).all());
    }
    EXPECT_TRUE((r.payoffs.array() >= 0).all() && (r.payoffs.array() <= 1300).all());
    for (long k = 0; k < 49; ++k) {
      for (int h = 0; h < 6; ++h) EXPECT_EQ(r.payoffs(k, h), score_forecast(r.prices.at(k + 1), r.forecasts(k, h)));
    }

    const auto again = run(c);
    EXPECT_EQ(again.prices.values(), r.prices.values());
    EXPECT_EQ(again.forecasts, r.forecasts);
    EXPECT_EQ(again.payoffs, r.payoffs);
  }
  EXPECT_NE(run(noisy_config(1)).prices.values(), run(noisy_config(2)).prices.values());
}

TEST(Run, ConfigValidation) {
  auto c = config_with(group(agents::Fundamentalist{}), 0);
  EXPECT_THROW(run(c), Error);
  c.horizon = 5;
  c.agents.pop_back();
  EXPECT_THROW(run(c), Error);
  c = config_with(group(agents::Noise{-1}));
  EXPECT_THROW(run(c), Error);
  c = config_with(group(agents::Fundamentalist{}));
  c.mistrade_prob = 2;
  EXPECT_THROW(run(c), Error);
}

TEST(Json, CarriesMetadataAndArrays) {
  const auto c = noisy_config(5);
  const auto r = run(c);
  const auto j = sim_result_json(c, r);
  const std::string text = j.dump();
  const auto back = nlohmann::json::parse(text);
  EXPECT_EQ(back["metadata"]["rng_algorithm"], "mt19937_64/u53/polar-box-muller");
  EXPECT_EQ(back["metadata"]["seed"].get<std::uint64_t>(), 5u);
  ASSERT_EQ(back["prices"].size(), 50u);
  for (long t = 0; t < 50; ++t) EXPECT_EQ(back["prices"][t].get<double>(), r.prices.at(t));
  EXPECT_EQ(back["forecasts"].size(), 50u);
  EXPECT_EQ(back["payoffs"].size(), 49u);
}

TEST(Rng, FixedStream) {
  Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a.normal(), b.normal());
  Rng c(1);
  double sum = 0, sq = 0;
  for (int i = 0; i < 20000; ++i) {
    const double z = c.normal();
    sum += z;
    sq += z * z;
  }
  EXPECT_NEAR(sum / 20000, 0.0, 0.03);
  EXPECT_NEAR(sq / 20000, 1.0, 0.03);
}

}  // namespace
