#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bubblelab/classify.hpp"
#include "bubblelab/diagnostics.hpp"
#include "bubblelab/growth_models.hpp"
#include "bubblelab/market_sim.hpp"

namespace bubblelab::cli {

namespace fs = std::filesystem;

/// Everything one invocation needs. Populated from an optional key=value
/// file first, then from flags, so flags win.
struct RunConfig {
  std::optional<fs::path> input;
  std::optional<fs::path> outdir;
  std::uint64_t seed = 42;
  int min_window = kDefaultMinWindow;
  double theta = 0.2;
  ConfidenceMode confidence = ConfidenceMode::TwoSided;
  ExperimentParams params;
  unsigned threads = 1;
  std::optional<Window> window;

  // simulate
  int horizon = 50;
  std::string preset = "bubble";
  std::optional<std::vector<AgentSpec>> agents;
  double noise_sigma = 0.0;
  double mistrade_prob = 0.0;
  std::optional<std::array<double, 2>> initial_prices;

  // table2
  Table2Config table2;

  // plotdata
  ScatterBasis scatter_basis = ScatterBasis::Excess;
};

using Setting = std::pair<std::string, std::string>;

/// Applies one key=value setting (keys as the long flag names, '_' or '-').
void apply_setting(RunConfig& config, std::string_view key, std::string_view value);
void apply_settings(RunConfig& config, const std::vector<Setting>& settings);

/// Plain-text `key = value` lines; '#' starts a comment.
std::vector<Setting> read_settings_file(const fs::path& path);

/// "r=0.05,D=3,H=6,p_min=0,p_max=1000" onto existing params.
void apply_params(ExperimentParams& params, std::string_view text);

/// Semicolon-separated agents, each optionally prefixed by a count:
/// "4*price_anchor(0.0862,1e-4);naive;noise(2)".
std::vector<AgentSpec> parse_agents(std::string_view text);

/// Named agent groups: "fundamentalist", "rational", "bubble".
std::vector<AgentSpec> preset_agents(std::string_view name, const ExperimentParams& params);

SimConfig make_sim_config(const RunConfig& config);

/// Output directory: --outdir, else BUBBLELAB_OUTDIR, else the working directory.
fs::path resolve_outdir(const RunConfig& config);

struct CommandResult {
  std::vector<fs::path> files;
  std::vector<std::string> messages;  // human-readable lines for stdout
};

CommandResult cmd_simulate(const RunConfig& config);
CommandResult cmd_sweep(const RunConfig& config);
CommandResult cmd_classify(const RunConfig& config);
/// Table CSV text; also written to <outdir>/table2.csv when an outdir is configured.
std::string cmd_table2(const RunConfig& config, CommandResult* result = nullptr);
CommandResult cmd_plotdata(const RunConfig& config);

enum ExitCode : int {
  kOk = 0,
  kUnexpected = 1,
  kConfigError = 2,
  kIngestionError = 3,
  kComputationError = 4,
};

int exit_code_for(ErrorKind kind);

}  // namespace bubblelab::cli
