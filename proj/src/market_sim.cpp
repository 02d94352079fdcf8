#include "bubblelab/market_sim.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

#include "bubblelab/csv.hpp"

namespace bubblelab {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

}  // namespace

std::string to_string(const AgentSpec& spec) {
  return std::visit(
      overloaded{
          [](const agents::Fundamentalist&) { return std::string("fundamentalist"); },
          [](const agents::RationalBubble& a) {
            return "rational_bubble(" + format_number(a.growth_rate) + "," + format_number(a.amplitude) + "," +
                   format_number(a.offset) + ")";
          },
          [](const agents::PriceAnchor& a) {
            return "price_anchor(" + format_number(a.a) + "," + format_number(a.b) + ")";
          },
          [](const agents::ReturnAnchor& a) {
            return "return_anchor(" + format_number(a.a) + "," + format_number(a.b) + ")";
          },
          [](const agents::Naive&) { return std::string("naive"); },
          [](const agents::Noise& a) { return "noise(" + format_number(a.sigma) + ")"; },
      },
      spec);
}

void validate(const AgentSpec& spec) {
  const bool ok = std::visit(
      overloaded{
          [](const agents::Fundamentalist&) { return true; },
          [](const agents::RationalBubble& a) {
            return std::isfinite(a.growth_rate) && std::isfinite(a.amplitude) && std::isfinite(a.offset);
          },
          [](const agents::PriceAnchor& a) { return std::isfinite(a.a) && std::isfinite(a.b); },
          [](const agents::ReturnAnchor& a) { return std::isfinite(a.a) && std::isfinite(a.b); },
          [](const agents::Naive&) { return true; },
          [](const agents::Noise& a) { return std::isfinite(a.sigma) && a.sigma >= 0.0; },
      },
      spec);
  if (!ok) throw Error(ErrorKind::InvalidConfig, "invalid agent parameters: " + to_string(spec));
}

void SimConfig::validate() const {
  params.validate();
  if (horizon < 1) throw Error(ErrorKind::InvalidConfig, "horizon must be >= 1");
  if (static_cast<int>(agents.size()) != params.traders) {
    throw Error(ErrorKind::InvalidConfig, "agent list has " + std::to_string(agents.size()) + " entries, H = " +
                                              std::to_string(params.traders));
  }
  for (const auto& a : agents) bubblelab::validate(a);
  if (!(return_noise_sigma >= 0.0) || !std::isfinite(return_noise_sigma)) {
    throw Error(ErrorKind::InvalidConfig, "return_noise_sigma must be >= 0");
  }
  if (!(mistrade_prob >= 0.0 && mistrade_prob <= 1.0)) {
    throw Error(ErrorKind::InvalidConfig, "mistrade_prob must lie in [0, 1]");
  }
  for (const double p : initial_prices) {
    if (!std::isfinite(p) || !params.in_range(p)) throw Error(ErrorKind::InvalidConfig, "initial price out of range");
  }
  if (!(reward.max_payoff >= 0.0) || !(reward.scale >= 0.0)) {
    throw Error(ErrorKind::InvalidConfig, "reward rule must be non-negative");
  }
}

double clearing_price(std::span<const double> forecasts, const ExperimentParams& params) {
  if (static_cast<int>(forecasts.size()) != params.traders) {
    throw Error(ErrorKind::WrongForecastCount, "expected " + std::to_string(params.traders) + " forecasts, got " +
                                                   std::to_string(forecasts.size()));
  }
  const double mean = std::accumulate(forecasts.begin(), forecasts.end(), 0.0) / static_cast<double>(forecasts.size());
  return params.clamp((mean + params.dividend) / (1.0 + params.r));
}

double score_forecast(double realized, double forecast, const RewardRule& rule) {
  const double err = realized - forecast;
  return std::max(rule.max_payoff - rule.scale * err * err, 0.0);
}

double agent_forecast(const AgentSpec& spec, const PriceSeries& history, long t, const ExperimentParams& params,
                      Rng& rng) {
  if (history.t_last() != t - 1) {
    throw Error(ErrorKind::InvalidArgument, "history must end at t-1", t);
  }
  const double pf = fundamental_price(params);
  const auto need = [&](Eigen::Index n) {
    if (history.size() < n) {
      throw Error(ErrorKind::InsufficientHistory, to_string(spec) + " needs " + std::to_string(n) + " past prices", t);
    }
  };

  const double raw = std::visit(
      overloaded{
          [&](const agents::Fundamentalist&) {
            need(1);
            return pf;
          },
          [&](const agents::RationalBubble& a) {
            need(1);
            return a.amplitude * std::pow(1.0 + a.growth_rate, static_cast<double>(t + 1)) + a.offset;
          },
          [&](const agents::PriceAnchor& a) {
            need(1);
            const double excess = history.at(t - 1) - pf;
            if (!(excess > 0.0)) return pf;
            return pf + excess * std::exp(2.0 * (a.a + a.b * excess));
          },
          [&](const agents::ReturnAnchor& a) {
            need(2);
            const double excess = history.at(t - 1) - pf;
            const double prev = history.at(t - 2) - pf;
            if (!(excess > 0.0) || !(prev > 0.0)) return pf;
            const double last_return = std::log(excess / prev);
            return pf + excess * std::exp(2.0 * (a.a + a.b * last_return));
          },
          [&](const agents::Naive&) {
            need(2);
            return history.at(t - 1);
          },
          [&](const agents::Noise& a) {
            need(1);
            return pf + a.sigma * rng.normal();
          },
      },
      spec);
  // Overflowing extrapolations saturate at the cap.
  return params.clamp(std::isnan(raw) ? params.p_max : raw);
}

double shift_decimal(double forecast, DecimalShift shift, const ExperimentParams& params) {
  return params.clamp(shift == DecimalShift::Up ? forecast * 10.0 : forecast * 0.1);
}

double inject_mistrade(double forecast, Rng& rng, double prob, const ExperimentParams& params) {
  if (!(prob >= 0.0 && prob <= 1.0)) throw Error(ErrorKind::InvalidArgument, "mistrade probability outside [0, 1]");
  if (prob == 0.0) return forecast;
  if (!(rng.uniform() < prob)) return forecast;
  return shift_decimal(forecast, rng.uniform() < 0.5 ? DecimalShift::Up : DecimalShift::Down, params);
}

SimResult run(const SimConfig& config) {
  config.validate();
  const auto& params = config.params;
  const int traders = params.traders;
  Rng rng(config.seed);

  // History starts with the two seed prices at t = -2, -1.
  std::vector<double> path(config.initial_prices.begin(), config.initial_prices.end());
  Eigen::MatrixXd forecasts(config.horizon, traders);
  Eigen::MatrixXd payoffs(std::max(config.horizon - 1, 0), traders);
  std::vector<double> submitted(traders);

  for (int t = 0; t < config.horizon; ++t) {
    const PriceSeries history(-2, Eigen::Map<const Eigen::VectorXd>(path.data(), path.size()));
    for (int h = 0; h < traders; ++h) {
      double f = agent_forecast(config.agents[h], history, t, params, rng);
      if (config.return_noise_sigma > 0.0 && f > 0.0) {
        f = params.clamp(f * std::exp(config.return_noise_sigma * rng.normal()));
      }
      f = inject_mistrade(f, rng, config.mistrade_prob, params);
      submitted[h] = f;
      forecasts(t, h) = f;
    }
    const double price = clearing_price(submitted, params);
    path.push_back(price);
    if (t >= 1) {
      for (int h = 0; h < traders; ++h) payoffs(t - 1, h) = score_forecast(price, forecasts(t - 1, h), config.reward);
    }
  }

  const Eigen::Map<const Eigen::VectorXd> all(path.data(), path.size());
  return SimResult{PriceSeries(0, all.tail(config.horizon)), std::move(forecasts), std::move(payoffs), 1,
                   std::string(Rng::kAlgorithm), config.seed};
}

}  // namespace bubblelab
