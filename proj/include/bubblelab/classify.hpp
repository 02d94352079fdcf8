#pragma once

#include <optional>
#include <string_view>

#include "bubblelab/window_sweep.hpp"

namespace bubblelab {

enum class BubbleLabel { Erratic, TooShort, RationalExponential, AnchoringOnPrice, AnchoringOnReturn };

/// Machine name, e.g. "anchoring_on_price".
std::string_view to_string(BubbleLabel label);
/// Human phrase, e.g. "anchoring on price".
std::string_view describe(BubbleLabel label);

struct ClassifyThresholds {
  double theta = 0.2;  // minimum significant fraction for an anchoring label
  int min_window = kDefaultMinWindow;
  ConfidenceMode confidence = ConfidenceMode::TwoSided;
  unsigned threads = 1;
};

struct BubbleVerdict {
  BubbleLabel label = BubbleLabel::Erratic;
  double price_fraction = 0.0;
  double return_fraction = 0.0;
  std::optional<Window> bubble_window;
  std::optional<RationalBubbleFit> rational_fit;
  std::optional<GridSummary> price_summary;
  std::optional<GridSummary> return_summary;
  ClassifyThresholds thresholds;
};

/// Longest contiguous run with p̄_t > 0 whose last excess exceeds its first;
/// ties go to the earliest run. None when no run reaches min_window points.
std::optional<Window> detect_bubble_window(const PriceSeries& prices, const ExperimentParams& params,
                                           int min_window = kDefaultMinWindow);

/// Full taxonomy on an automatically detected bubble window.
BubbleVerdict classify_series(const PriceSeries& prices, const ExperimentParams& params,
                              const ClassifyThresholds& thresholds = {});

/// Same decision rule on a caller-supplied window (e.g. the published group windows).
BubbleVerdict classify_window(const PriceSeries& prices, const ExperimentParams& params, const Window& window,
                              const ClassifyThresholds& thresholds = {});

}  // namespace bubblelab
