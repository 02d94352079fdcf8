// bubblelab: simulate learning-to-forecast markets and calibrate
// super-exponential bubble models on price series.

#include <CLI11.hpp>

#include <iostream>

#include "bubblelab/cli.hpp"

namespace cli = bubblelab::cli;

namespace {

struct Flag {
  const char* name;
  const char* help;
};

constexpr Flag kCommonFlags[] = {
    {"--input", "input series CSV (t,price[,h1..hH])"},
    {"--outdir", "output directory (default: $BUBBLELAB_OUTDIR or .)"},
    {"--seed", "64-bit random seed"},
    {"--min-window", "smallest calibration window in price points (>= 5)"},
    {"--theta", "significant-fraction threshold for anchoring labels"},
    {"--confidence", "two-sided | one-sided lower 95% bound"},
    {"--params", "market constants, e.g. r=0.05,D=3,H=6,p_min=0,p_max=1000"},
    {"--window", "explicit analysis window start:end"},
    {"--threads", "worker threads for window sweeps"},
};

constexpr Flag kSimulateFlags[] = {
    {"--horizon", "number of simulated periods"},
    {"--preset", "agent group: bubble | fundamentalist | rational"},
    {"--agents", "agent list, e.g. '4*price_anchor(0.0862,1e-4);naive;noise(2)'"},
    {"--noise-sigma", "sd of Gaussian noise on each log-forecast"},
    {"--mistrade-prob", "per agent-period probability of a misplaced decimal"},
    {"--initial-prices", "two seed prices p_{-2},p_{-1}"},
};

constexpr Flag kTable2Flags[] = {
    {"--steps", "number of steps after t=0"},
    {"--a1", "exponential log-growth"},
    {"--a2", "price-feedback intercept"},
    {"--b2", "price-feedback slope"},
    {"--p0", "initial excess price"},
};

constexpr Flag kPlotFlags[] = {
    {"--scatter-basis", "excess | price returns for the diagonal scatter"},
};

template <std::size_t N>
void add_flags(CLI::App* app, const Flag (&flags)[N], std::vector<cli::Setting>& sink) {
  for (const auto& flag : flags) {
    const std::string key = std::string(flag.name).substr(2);
    app->add_option_function<std::string>(
        flag.name, [&sink, key](const std::string& v) { sink.emplace_back(key, v); }, flag.help);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bubblelab - super-exponential bubble simulation and calibration"};
  app.require_subcommand(1);

  std::vector<cli::Setting> flags;
  std::string config_file;

  auto* simulate = app.add_subcommand("simulate", "run the experimental market simulator");
  auto* sweep = app.add_subcommand("sweep", "fit both feedback models over every [start, end] window");
  auto* classify = app.add_subcommand("classify", "classify a price series' bubble");
  auto* table2 = app.add_subcommand("table2", "print the exponential-vs-feedback comparison table");
  auto* plotdata = app.add_subcommand("plotdata", "emit plot-ready CSV files");

  for (auto* sub : {simulate, sweep, classify, table2, plotdata}) {
    add_flags(sub, kCommonFlags, flags);
    sub->add_option("--config", config_file, "key=value settings file (flags override it)");
  }
  add_flags(simulate, kSimulateFlags, flags);
  add_flags(table2, kTable2Flags, flags);
  add_flags(plotdata, kPlotFlags, flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? cli::kOk : cli::kConfigError;
  }

  try {
    cli::RunConfig config;
    if (!config_file.empty()) cli::apply_settings(config, cli::read_settings_file(config_file));
    cli::apply_settings(config, flags);

    cli::CommandResult result;
    if (simulate->parsed()) {
      result = cli::cmd_simulate(config);
    } else if (sweep->parsed()) {
      result = cli::cmd_sweep(config);
    } else if (classify->parsed()) {
      result = cli::cmd_classify(config);
    } else if (table2->parsed()) {
      std::cout << cli::cmd_table2(config, &result);
    } else if (plotdata->parsed()) {
      result = cli::cmd_plotdata(config);
    }
    for (const auto& line : result.messages) std::cout << line << '\n';
    for (const auto& path : result.files) std::cerr << "wrote " << path.string() << '\n';
    return cli::kOk;
  } catch (const bubblelab::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return cli::exit_code_for(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return cli::kUnexpected;
  }
}
