#pragma once

#include <json.hpp>

#include "bubblelab/classify.hpp"
#include "bubblelab/market_sim.hpp"

namespace bubblelab {

// nlohmann writes doubles with the shortest representation that round-trips
// (at most 17 significant digits), so every value survives a reload exactly.

void to_json(nlohmann::json& j, const ExperimentParams& params);
void to_json(nlohmann::json& j, const Window& window);
void to_json(nlohmann::json& j, const OlsFit& fit);
void to_json(nlohmann::json& j, const RationalBubbleFit& fit);
void to_json(nlohmann::json& j, const GridSummary& summary);
void to_json(nlohmann::json& j, const ClassifyThresholds& thresholds);
void to_json(nlohmann::json& j, const BubbleVerdict& verdict);

/// Metadata (seed, generator, parameters, agents) plus price, forecast and payoff arrays.
nlohmann::json sim_result_json(const SimConfig& config, const SimResult& result);

}  // namespace bubblelab
