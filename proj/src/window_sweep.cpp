#include "bubblelab/window_sweep.hpp"

#include <algorithm>
#include <future>
#include <limits>
#include <ostream>
#include <vector>

#include "bubblelab/csv.hpp"

namespace bubblelab {

SweepBounds SweepBounds::covering(const Window& window, int min_window) {
  return {window.start, window.end, window.start, window.end, min_window};
}

std::size_t admissible_window_count(const SweepBounds& b) {
  std::size_t count = 0;
  for (long s = b.start_first; s <= b.start_last; ++s) {
    const long first_end = std::max(b.end_first, s + b.min_window - 1);
    if (b.end_last >= first_end) count += static_cast<std::size_t>(b.end_last - first_end + 1);
  }
  return count;
}

const SweepCell* SweepGrid::find(long start, long end) const {
  const auto it = cells_.find({start, end});
  return it == cells_.end() ? nullptr : &it->second;
}

std::size_t SweepGrid::valid_count() const {
  return static_cast<std::size_t>(
      std::count_if(cells_.begin(), cells_.end(), [](const auto& kv) { return kv.second.valid(); }));
}

SweepCell evaluate_cell(const ExcessSeries& excess, ModelTag model, const Window& window, ConfidenceMode confidence) {
  SweepCell cell{window, std::nullopt, std::nullopt};
  try {
    switch (model) {
      case ModelTag::Price: cell.fit = fit_price_model(excess, window, confidence); break;
      case ModelTag::Return: cell.fit = fit_return_model(excess, window, confidence); break;
      default: throw Error(ErrorKind::InvalidArgument, "sweeps support the price and return models only");
    }
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::InvalidArgument) throw;
    cell.error = e.kind();
  }
  return cell;
}

SweepGrid sweep(const ExcessSeries& excess, ModelTag model, const SweepBounds& bounds, const SweepOptions& options) {
  if (model != ModelTag::Price && model != ModelTag::Return) {
    throw Error(ErrorKind::InvalidArgument, "sweeps support the price and return models only");
  }
  if (bounds.min_window < kDefaultMinWindow) {
    throw Error(ErrorKind::InvalidArgument, "min_window below " + std::to_string(kDefaultMinWindow));
  }
  if (bounds.start_first > bounds.start_last || bounds.end_first > bounds.end_last ||
      !excess.contains(bounds.start_first) || !excess.contains(bounds.start_last) ||
      !excess.contains(bounds.end_first) || !excess.contains(bounds.end_last)) {
    throw Error(ErrorKind::InvalidArgument, "sweep bounds outside series");
  }

  std::vector<Window> windows;
  windows.reserve(admissible_window_count(bounds));
  for (long s = bounds.start_first; s <= bounds.start_last; ++s) {
    for (long e = std::max(bounds.end_first, s + bounds.min_window - 1); e <= bounds.end_last; ++e) {
      windows.push_back({s, e});
    }
  }

  std::vector<SweepCell> results(windows.size());
  const auto run_range = [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) results[i] = evaluate_cell(excess, model, windows[i], options.confidence);
  };
  const std::size_t threads = std::clamp<std::size_t>(options.threads, 1, std::max<std::size_t>(windows.size(), 1));
  if (threads == 1) {
    run_range(0, windows.size());
  } else {
    std::vector<std::future<void>> jobs;
    const std::size_t chunk = (windows.size() + threads - 1) / threads;
    for (std::size_t lo = 0; lo < windows.size(); lo += chunk) {
      jobs.push_back(std::async(std::launch::async, run_range, lo, std::min(lo + chunk, windows.size())));
    }
    for (auto& job : jobs) job.get();
  }

  std::map<CellKey, SweepCell> cells;
  for (auto& cell : results) cells.emplace(CellKey{cell.window.start, cell.window.end}, std::move(cell));
  return SweepGrid(model, bounds, std::move(cells));
}

std::map<CellKey, bool> significance_mask(const SweepGrid& grid) {
  std::map<CellKey, bool> mask;
  for (const auto& [key, cell] : grid.cells()) mask.emplace(key, cell.significant());
  return mask;
}

double significant_fraction(const SweepGrid& grid) {
  std::size_t valid = 0;
  std::size_t significant = 0;
  for (const auto& [key, cell] : grid.cells()) {
    if (!cell.valid()) continue;
    ++valid;
    if (cell.significant()) ++significant;
  }
  if (valid == 0) throw Error(ErrorKind::NoValidCells, "grid has no valid cells");
  return static_cast<double>(significant) / static_cast<double>(valid);
}

GridSummary summarize(const SweepGrid& grid) {
  GridSummary s;
  s.model = grid.model();
  s.cells = grid.cell_count();
  double best_t = 0.0;
  for (const auto& [key, cell] : grid.cells()) {
    if (!cell.valid()) {
      ++s.errors[*cell.error];
      continue;
    }
    ++s.valid;
    if (!cell.significant()) continue;
    ++s.significant;
    const double t = cell.fit->se_b > 0.0 ? cell.fit->t_stat_b() : std::numeric_limits<double>::infinity();
    if (!s.best_window || t > best_t) {
      best_t = t;
      s.best_window = cell.window;
    }
  }
  if (s.valid > 0) s.fraction = static_cast<double>(s.significant) / static_cast<double>(s.valid);
  return s;
}

void write_grid_csv(std::ostream& out, const SweepGrid& grid) {
  out << "model,start,end,a,b,se_a,se_b,a_lower,b_lower,n,r2,valid,error_kind\n";
  const auto model = to_string(grid.model());
  for (const auto& [key, cell] : grid.cells()) {
    out << model << ',' << key.first << ',' << key.second << ',';
    if (cell.valid()) {
      const auto& f = *cell.fit;
      out << format_number(f.a) << ',' << format_number(f.b) << ',' << format_number(f.se_a) << ','
          << format_number(f.se_b) << ',' << format_number(f.a_lower) << ',' << format_number(f.b_lower) << ','
          << f.n << ',' << format_number(f.r2) << ",1,\n";
    } else {
      out << ",,,,,,,,0," << to_string(*cell.error) << '\n';
    }
  }
}

}  // namespace bubblelab
