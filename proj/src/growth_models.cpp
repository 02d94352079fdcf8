#include "bubblelab/growth_models.hpp"

#include <ostream>

#include "bubblelab/csv.hpp"

namespace bubblelab {

std::vector<Table2Row> table2(const Table2Config& config) {
  const auto exp_series =
      iterate(ModelParams{Exponential<double>{config.a1}, config.initial_excess}, config.steps).values();
  const auto fb_series =
      iterate(ModelParams{PriceFeedback<double>{config.a2, config.b2}, config.initial_excess}, config.steps).values();

  const auto pct = [](const Eigen::VectorXd& v, int t) -> std::optional<int> {
    if (t == 0) return std::nullopt;
    return static_cast<int>(std::lround(100.0 * (v(t) / v(t - 1) - 1.0)));
  };

  std::vector<Table2Row> rows;
  rows.reserve(config.steps + 1);
  for (int t = 0; t <= config.steps; ++t) {
    rows.push_back({t, exp_series(t), pct(exp_series, t), fb_series(t), pct(fb_series, t)});
  }
  return rows;
}

std::optional<int> feedback_overtakes(const std::vector<Table2Row>& rows) {
  for (const auto& row : rows) {
    if (row.feedback > row.exponential) return row.t;
  }
  return std::nullopt;
}

void write_table2_csv(std::ostream& out, const std::vector<Table2Row>& rows) {
  const auto pct = [](const std::optional<int>& p) { return p ? std::to_string(*p) + "%" : std::string("--"); };
  out << "t,exponential,exponential_pct,feedback,feedback_pct\n";
  for (const auto& row : rows) {
    out << row.t << ',' << format_fixed(row.exponential, 2) << ',' << pct(row.exponential_pct) << ','
        << format_fixed(row.feedback, 2) << ',' << pct(row.feedback_pct) << '\n';
  }
}

}  // namespace bubblelab
