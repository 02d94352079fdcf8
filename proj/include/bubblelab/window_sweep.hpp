#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <utility>

#include "bubblelab/fit_models.hpp"

namespace bubblelab {

/// Start and end ranges (inclusive) of the [start, end] triangle.
struct SweepBounds {
  long start_first = 0;
  long start_last = 0;
  long end_first = 0;
  long end_last = 0;
  int min_window = kDefaultMinWindow;

  /// Every start and end inside [window.start, window.end].
  static SweepBounds covering(const Window& window, int min_window = kDefaultMinWindow);
};

/// Number of windows with start/end in range and length >= min_window.
std::size_t admissible_window_count(const SweepBounds& bounds);

struct SweepOptions {
  ConfidenceMode confidence = ConfidenceMode::TwoSided;
  unsigned threads = 1;
};

struct SweepCell {
  Window window;
  std::optional<OlsFit> fit;
  std::optional<ErrorKind> error;  // set iff the fit failed

  bool valid() const noexcept { return fit.has_value(); }
  bool significant() const noexcept { return fit && fit->a_lower > 0.0 && fit->b_lower > 0.0; }
};

using CellKey = std::pair<long, long>;  // (start, end)

/// Sparse triangular surface of fits. Only admissible windows are present.
class SweepGrid {
public:
  SweepGrid(ModelTag model, SweepBounds bounds, std::map<CellKey, SweepCell> cells)
      : model_(model), bounds_(bounds), cells_(std::move(cells)) {}

  ModelTag model() const noexcept { return model_; }
  const SweepBounds& bounds() const noexcept { return bounds_; }
  const std::map<CellKey, SweepCell>& cells() const noexcept { return cells_; }
  const SweepCell* find(long start, long end) const;

  std::size_t cell_count() const noexcept { return cells_.size(); }
  std::size_t valid_count() const;

private:
  ModelTag model_;
  SweepBounds bounds_;
  std::map<CellKey, SweepCell> cells_;
};

/// Fit one window; failures become an invalid cell carrying the error kind.
SweepCell evaluate_cell(const ExcessSeries& excess, ModelTag model, const Window& window,
                        ConfidenceMode confidence = ConfidenceMode::TwoSided);

/// Evaluate `model` (Price or Return) on every admissible window. Cells are
/// independent; with options.threads > 1 they are evaluated concurrently.
SweepGrid sweep(const ExcessSeries& excess, ModelTag model, const SweepBounds& bounds,
                const SweepOptions& options = {});

/// Per cell: a_lower > 0 and b_lower > 0. Invalid cells are false.
std::map<CellKey, bool> significance_mask(const SweepGrid& grid);

/// Share of valid cells that pass the significance mask. Throws NoValidCells.
double significant_fraction(const SweepGrid& grid);

struct GridSummary {
  ModelTag model = ModelTag::Generic;
  std::size_t cells = 0;
  std::size_t valid = 0;
  std::size_t significant = 0;
  std::optional<double> fraction;  // empty when no cell is valid
  std::map<ErrorKind, std::size_t> errors;
  std::optional<Window> best_window;  // significant cell with the largest slope t-statistic
};

GridSummary summarize(const SweepGrid& grid);

/// Long format: model,start,end,a,b,se_a,se_b,a_lower,b_lower,n,r2,valid,error_kind
void write_grid_csv(std::ostream& out, const SweepGrid& grid);

}  // namespace bubblelab
