#include "bubblelab/json_io.hpp"

namespace bubblelab {
namespace {

nlohmann::json matrix_rows(const Eigen::MatrixXd& m) {
  auto rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    auto row = nlohmann::json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(m(i, k));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

void to_json(nlohmann::json& j, const ExperimentParams& p) {
  j = {{"r", p.r}, {"D", p.dividend}, {"H", p.traders}, {"p_min", p.p_min}, {"p_max", p.p_max},
       {"fundamental", p.fundamental()}};
}

void to_json(nlohmann::json& j, const Window& w) { j = {{"start", w.start}, {"end", w.end}}; }

void to_json(nlohmann::json& j, const OlsFit& f) {
  j = {{"model", to_string(f.model)},
       {"a", f.a},
       {"b", f.b},
       {"se_a", f.se_a},
       {"se_b", f.se_b},
       {"a_lower", f.a_lower},
       {"b_lower", f.b_lower},
       {"n", f.n},
       {"df", f.df},
       {"r2", f.r2},
       {"ssr", f.ssr},
       {"confidence", to_string(f.confidence)},
       {"perfect_fit", f.perfect_fit}};
}

void to_json(nlohmann::json& j, const RationalBubbleFit& f) {
  j = {{"r_hat", f.growth_rate},       {"a1", f.amplitude},
       {"b1", f.offset},               {"r_hat_lower", f.growth_rate_lower},
       {"r_hat_upper", f.growth_rate_upper}, {"log_fit", f.log_fit}};
}

void to_json(nlohmann::json& j, const GridSummary& s) {
  auto errors = nlohmann::json::object();
  for (const auto& [kind, count] : s.errors) errors[std::string(to_string(kind))] = count;
  j = {{"model", to_string(s.model)},
       {"cells", s.cells},
       {"valid", s.valid},
       {"significant", s.significant},
       {"fraction", s.fraction ? nlohmann::json(*s.fraction) : nlohmann::json(nullptr)},
       {"errors", errors},
       {"best_window", s.best_window ? nlohmann::json(*s.best_window) : nlohmann::json(nullptr)}};
}

void to_json(nlohmann::json& j, const ClassifyThresholds& t) {
  j = {{"theta", t.theta}, {"min_window", t.min_window}, {"confidence", to_string(t.confidence)}};
}

void to_json(nlohmann::json& j, const BubbleVerdict& v) {
  j = {{"label", to_string(v.label)},
       {"description", describe(v.label)},
       {"price_fraction", v.price_fraction},
       {"return_fraction", v.return_fraction},
       {"bubble_window", v.bubble_window ? nlohmann::json(*v.bubble_window) : nlohmann::json(nullptr)},
       {"rational_fit", v.rational_fit ? nlohmann::json(*v.rational_fit) : nlohmann::json(nullptr)},
       {"price_grid", v.price_summary ? nlohmann::json(*v.price_summary) : nlohmann::json(nullptr)},
       {"return_grid", v.return_summary ? nlohmann::json(*v.return_summary) : nlohmann::json(nullptr)},
       {"thresholds", v.thresholds}};
}

nlohmann::json sim_result_json(const SimConfig& config, const SimResult& result) {
  auto agent_list = nlohmann::json::array();
  for (const auto& a : config.agents) agent_list.push_back(to_string(a));
  const auto& p = result.prices.values();
  return {{"metadata",
           {{"rng_algorithm", result.rng_algorithm},
            {"seed", result.seed},
            {"params", config.params},
            {"agents", agent_list},
            {"horizon", config.horizon},
            {"return_noise_sigma", config.return_noise_sigma},
            {"mistrade_prob", config.mistrade_prob},
            {"initial_prices", config.initial_prices},
            {"reward", {{"max_payoff", config.reward.max_payoff}, {"scale", config.reward.scale}}},
            {"payoff_t0", result.payoff_t0}}},
          {"t0", result.prices.t0()},
          {"prices", std::vector<double>(p.data(), p.data() + p.size())},
          {"forecasts", matrix_rows(result.forecasts)},
          {"payoffs", matrix_rows(result.payoffs)}};
}

}  // namespace bubblelab
