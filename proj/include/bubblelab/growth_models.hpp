#pragma once

#include <cmath>
#include <iosfwd>
#include <optional>
#include <variant>
#include <vector>

#include "bubblelab/random.hpp"
#include "bubblelab/series.hpp"

namespace bubblelab {

// Generative bubble maps on the excess price p̄_t (all logs natural):
//   exponential:     p̄_t = p̄_{t-1} exp(a1)
//   price feedback:  p̄_t = p̄_{t-1} exp(a2 + b2 p̄_{t-1})
//   return feedback: g_t = a3 + b3 g_{t-1},  p̄_t = p̄_{t-1} exp(g_t)

template <typename Scalar>
struct Exponential {
  Scalar log_growth;
};

template <typename Scalar>
struct PriceFeedback {
  Scalar a;
  Scalar b;
};

template <typename Scalar>
struct ReturnFeedback {
  Scalar a;
  Scalar b;
  Scalar initial_log_return;  // g_0
};

template <typename Scalar>
struct ModelParamsT {
  std::variant<Exponential<Scalar>, PriceFeedback<Scalar>, ReturnFeedback<Scalar>> variant;
  Scalar initial_excess;  // p̄_0 > 0

  void validate() const;
};
using ModelParams = ModelParamsT<double>;

namespace detail {

template <typename Scalar>
struct GrowthState {
  Scalar excess;
  Scalar log_return;
};

/// One step of the map; `shock` is added to the log-growth of this step.
template <typename Scalar>
GrowthState<Scalar> step(const ModelParamsT<Scalar>& model, GrowthState<Scalar> s, Scalar shock) {
  return std::visit(
      [&](const auto& m) -> GrowthState<Scalar> {
        using M = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<M, Exponential<Scalar>>) {
          const Scalar g = m.log_growth + shock;
          return {s.excess * std::exp(g), g};
        } else if constexpr (std::is_same_v<M, PriceFeedback<Scalar>>) {
          const Scalar g = m.a + m.b * s.excess + shock;
          return {s.excess * std::exp(g), g};
        } else {
          const Scalar g = m.a + m.b * s.log_return + shock;
          return {s.excess * std::exp(g), g};
        }
      },
      model.variant);
}

template <typename Scalar>
Scalar initial_log_return(const ModelParamsT<Scalar>& model) {
  if (const auto* m = std::get_if<ReturnFeedback<Scalar>>(&model.variant)) return m->initial_log_return;
  return Scalar(0);
}

template <typename Scalar, typename ShockFn>
ExcessSeriesT<Scalar> run_map(const ModelParamsT<Scalar>& model, int steps, ShockFn&& shock) {
  model.validate();
  if (steps < 0) throw Error(ErrorKind::InvalidArgument, "steps must be >= 0");
  Vector<Scalar> out(steps + 1);
  GrowthState<Scalar> s{model.initial_excess, initial_log_return(model)};
  out(0) = s.excess;
  for (int t = 1; t <= steps; ++t) {
    s = step(model, s, shock());
    if (!std::isfinite(s.excess) || !std::isfinite(s.log_return)) {
      throw Error(ErrorKind::FiniteHorizonSingularity,
                  "excess price diverged after t=" + std::to_string(t - 1) + " (last finite index)", t - 1);
    }
    out(t) = s.excess;
  }
  return ExcessSeriesT<Scalar>(0, std::move(out));
}

}  // namespace detail

template <typename Scalar>
void ModelParamsT<Scalar>::validate() const {
  if (!(initial_excess > Scalar(0)) || !std::isfinite(initial_excess)) {
    throw Error(ErrorKind::InvalidArgument, "initial excess price must be > 0");
  }
  const bool finite = std::visit(
      [](const auto& m) {
        using M = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<M, Exponential<Scalar>>) return std::isfinite(m.log_growth);
        else if constexpr (std::is_same_v<M, PriceFeedback<Scalar>>) return std::isfinite(m.a) && std::isfinite(m.b);
        else return std::isfinite(m.a) && std::isfinite(m.b) && std::isfinite(m.initial_log_return);
      },
      variant);
  if (!finite) throw Error(ErrorKind::InvalidArgument, "model parameters must be finite");
}

/// Noise-free iteration for `steps` steps from p̄_0 at t = 0. Stops with
/// FiniteHorizonSingularity instead of emitting non-finite values.
template <typename Scalar>
ExcessSeriesT<Scalar> iterate(const ModelParamsT<Scalar>& model, int steps) {
  return detail::run_map(model, steps, [] { return Scalar(0); });
}

/// Same map with an independent N(0, sigma) shock added to every step's
/// log-growth. For return feedback the shock enters the g_t recursion.
template <typename Scalar>
ExcessSeriesT<Scalar> iterate_with_noise(const ModelParamsT<Scalar>& model, int steps, Scalar sigma, Rng& rng) {
  if (!(sigma >= Scalar(0))) throw Error(ErrorKind::InvalidArgument, "noise sigma must be >= 0");
  return detail::run_map(model, steps, [&] { return static_cast<Scalar>(sigma * rng.normal()); });
}

/// Parameters of the exponential-versus-feedback comparison table.
struct Table2Config {
  int steps = 23;
  double a1 = std::log(1.1);
  double a2 = std::log(1.09);
  double b2 = 1e-4;
  double initial_excess = 60.0;
};

struct Table2Row {
  int t;
  double exponential;
  std::optional<int> exponential_pct;
  double feedback;
  std::optional<int> feedback_pct;
};

std::vector<Table2Row> table2(const Table2Config& config = {});

/// First t at which the feedback column exceeds the exponential one.
std::optional<int> feedback_overtakes(const std::vector<Table2Row>& rows);

/// Writes `t,exponential,exponential_pct,feedback,feedback_pct` with prices at
/// 2 decimals and growth as whole percents ("--" for the first row).
void write_table2_csv(std::ostream& out, const std::vector<Table2Row>& rows);

}  // namespace bubblelab
