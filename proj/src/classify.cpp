#include "bubblelab/classify.hpp"

namespace bubblelab {

std::string_view to_string(BubbleLabel label) {
  switch (label) {
    case BubbleLabel::Erratic: return "erratic";
    case BubbleLabel::TooShort: return "too_short";
    case BubbleLabel::RationalExponential: return "rational_exponential";
    case BubbleLabel::AnchoringOnPrice: return "anchoring_on_price";
    case BubbleLabel::AnchoringOnReturn: return "anchoring_on_return";
  }
  return "erratic";
}

std::string_view describe(BubbleLabel label) {
  switch (label) {
    case BubbleLabel::Erratic: return "erratic";
    case BubbleLabel::TooShort: return "too short for analysis";
    case BubbleLabel::RationalExponential: return "rational (exponential) bubble";
    case BubbleLabel::AnchoringOnPrice: return "anchoring on price";
    case BubbleLabel::AnchoringOnReturn: return "anchoring on return";
  }
  return "erratic";
}

std::optional<Window> detect_bubble_window(const PriceSeries& prices, const ExperimentParams& params,
                                           int min_window) {
  const auto excess = excess_series(prices, params);
  const auto& v = excess.values();
  std::optional<Window> best;
  Eigen::Index i = 0;
  while (i < v.size()) {
    if (!(v(i) > 0.0)) {
      ++i;
      continue;
    }
    Eigen::Index j = i;
    while (j + 1 < v.size() && v(j + 1) > 0.0) ++j;
    const Window run{excess.t0() + i, excess.t0() + j};
    if (v(j) > v(i) && run.length() >= min_window && (!best || run.length() > best->length())) best = run;
    i = j + 1;
  }
  return best;
}

BubbleVerdict classify_window(const PriceSeries& prices, const ExperimentParams& params, const Window& window,
                              const ClassifyThresholds& thresholds) {
  BubbleVerdict verdict;
  verdict.thresholds = thresholds;
  verdict.bubble_window = window;
  if (window.length() < thresholds.min_window + 2) {
    verdict.label = BubbleLabel::TooShort;
    return verdict;
  }

  const auto excess = excess_series(prices, params);
  const auto bounds = SweepBounds::covering(window, thresholds.min_window);
  const SweepOptions options{thresholds.confidence, thresholds.threads};
  const auto price_grid = sweep(excess, ModelTag::Price, bounds, options);
  const auto return_grid = sweep(excess, ModelTag::Return, bounds, options);
  verdict.price_summary = summarize(price_grid);
  verdict.return_summary = summarize(return_grid);
  // A grid without any valid cell carries no evidence for its model.
  verdict.price_fraction = verdict.price_summary->fraction.value_or(0.0);
  verdict.return_fraction = verdict.return_summary->fraction.value_or(0.0);

  try {
    verdict.rational_fit = fit_rational_bubble(prices, window, fundamental_price(params), thresholds.confidence);
  } catch (const Error&) {
    verdict.rational_fit.reset();
  }

  if (verdict.price_fraction < thresholds.theta && verdict.return_fraction < thresholds.theta) {
    verdict.label = BubbleLabel::RationalExponential;
  } else if (verdict.price_fraction >= verdict.return_fraction) {
    verdict.label = BubbleLabel::AnchoringOnPrice;
  } else {
    verdict.label = BubbleLabel::AnchoringOnReturn;
  }
  return verdict;
}

BubbleVerdict classify_series(const PriceSeries& prices, const ExperimentParams& params,
                              const ClassifyThresholds& thresholds) {
  const auto window = detect_bubble_window(prices, params, thresholds.min_window);
  if (!window) {
    BubbleVerdict verdict;
    verdict.thresholds = thresholds;
    verdict.label = BubbleLabel::Erratic;
    return verdict;
  }
  return classify_window(prices, params, *window, thresholds);
}

}  // namespace bubblelab
