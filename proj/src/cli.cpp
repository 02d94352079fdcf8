#include "bubblelab/cli.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "bubblelab/csv.hpp"
#include "bubblelab/json_io.hpp"

namespace bubblelab::cli {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t pos = 0;
  while (true) {
    const auto next = s.find(sep, pos);
    parts.push_back(trim(s.substr(pos, next == std::string_view::npos ? std::string_view::npos : next - pos)));
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  return parts;
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value) {
  throw Error(ErrorKind::InvalidConfig, "invalid value '" + std::string(value) + "' for " + std::string(key));
}

template <typename T>
T parse_number(std::string_view key, std::string_view value) {
  value = trim(value);
  if (!value.empty() && value.front() == '+') value.remove_prefix(1);
  T out{};
  const auto* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (value.empty() || ec != std::errc() || ptr != end) bad_value(key, value);
  if constexpr (std::is_floating_point_v<T>) {
    if (!std::isfinite(out)) bad_value(key, value);
  }
  return out;
}

std::string normalize_key(std::string_view key) {
  std::string k(trim(key));
  while (!k.empty() && k.front() == '-') k.erase(0, 1);
  std::replace(k.begin(), k.end(), '_', '-');
  return k;
}

Window parse_window(std::string_view key, std::string_view value) {
  const char sep = value.find(':') != std::string_view::npos ? ':' : ',';
  const auto parts = split(value, sep);
  if (parts.size() != 2) bad_value(key, value);
  const Window w{parse_number<long>(key, parts[0]), parse_number<long>(key, parts[1])};
  if (w.end < w.start) bad_value(key, value);
  return w;
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw Error(ErrorKind::Io, "cannot create output directory " + dir.string());
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::Io, "cannot write " + path.string());
  return out;
}

SeriesTable load_input(const RunConfig& config) {
  if (!config.input) throw Error(ErrorKind::InvalidConfig, "--input is required");
  if (!fs::is_regular_file(*config.input)) throw Error(ErrorKind::Io, "input file not found: " + config.input->string());
  return load_csv(*config.input, config.params);
}

Window analysis_window(const RunConfig& config, const PriceSeries& prices) {
  if (!config.window) return {prices.t0(), prices.t_last()};
  if (!prices.contains(config.window->start) || !prices.contains(config.window->end)) {
    throw Error(ErrorKind::InvalidConfig, "window " + to_string(*config.window) + " outside the input series");
  }
  return *config.window;
}

Window sweep_window(const RunConfig& config, const PriceSeries& prices) {
  const auto window = analysis_window(config, prices);
  if (window.length() < config.min_window) {
    throw Error(ErrorKind::TooFewPoints, "window " + to_string(window) + " has fewer than " +
                                             std::to_string(config.min_window) + " points");
  }
  return window;
}

std::string fixed(double v, int decimals = 3) { return format_fixed(v, decimals); }

}  // namespace

void apply_params(ExperimentParams& params, std::string_view text) {
  for (const auto item : split(text, ',')) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string_view::npos) bad_value("params", item);
    const auto key = trim(item.substr(0, eq));
    const auto value = trim(item.substr(eq + 1));
    if (key == "r") params.r = parse_number<double>("params.r", value);
    else if (key == "D") params.dividend = parse_number<double>("params.D", value);
    else if (key == "H") params.traders = parse_number<int>("params.H", value);
    else if (key == "p_min") params.p_min = parse_number<double>("params.p_min", value);
    else if (key == "p_max") params.p_max = parse_number<double>("params.p_max", value);
    else throw Error(ErrorKind::InvalidConfig, "unknown parameter '" + std::string(key) + "' (expected r, D, H, p_min, p_max)");
  }
  params.validate();
}

std::vector<AgentSpec> parse_agents(std::string_view text) {
  std::vector<AgentSpec> out;
  for (auto item : split(text, ';')) {
    if (item.empty()) continue;
    int count = 1;
    if (const auto star = item.find('*'); star != std::string_view::npos) {
      count = parse_number<int>("agents", item.substr(0, star));
      if (count < 1) bad_value("agents", item);
      item = trim(item.substr(star + 1));
    }
    std::string_view name = item;
    std::vector<double> args;
    if (const auto open = item.find('('); open != std::string_view::npos) {
      if (item.back() != ')') bad_value("agents", item);
      name = trim(item.substr(0, open));
      for (const auto a : split(item.substr(open + 1, item.size() - open - 2), ',')) {
        args.push_back(parse_number<double>("agents", a));
      }
    }
    const auto want = [&](std::size_t n) {
      if (args.size() != n) {
        throw Error(ErrorKind::InvalidConfig,
                    std::string(name) + " takes " + std::to_string(n) + " argument(s): '" + std::string(item) + "'");
      }
    };
    AgentSpec spec;
    if (name == "fundamentalist") {
      want(0);
      spec = agents::Fundamentalist{};
    } else if (name == "naive") {
      want(0);
      spec = agents::Naive{};
    } else if (name == "rational_bubble") {
      want(3);
      spec = agents::RationalBubble{args[0], args[1], args[2]};
    } else if (name == "price_anchor") {
      want(2);
      spec = agents::PriceAnchor{args[0], args[1]};
    } else if (name == "return_anchor") {
      want(2);
      spec = agents::ReturnAnchor{args[0], args[1]};
    } else if (name == "noise") {
      want(1);
      spec = agents::Noise{args[0]};
    } else {
      throw Error(ErrorKind::InvalidConfig, "unknown agent kind '" + std::string(name) + "'");
    }
    validate(spec);
    out.insert(out.end(), count, spec);
  }
  if (out.empty()) throw Error(ErrorKind::InvalidConfig, "agent list is empty");
  return out;
}

std::vector<AgentSpec> preset_agents(std::string_view name, const ExperimentParams& params) {
  const int h = params.traders;
  if (name == "fundamentalist") return std::vector<AgentSpec>(h, agents::Fundamentalist{});
  if (name == "rational") return std::vector<AgentSpec>(h, agents::RationalBubble{params.r, 1.0, params.fundamental()});
  if (name == "bubble") {
    // Price anchors of varying strength plus one naive trader.
    const std::array<AgentSpec, 5> anchors{agents::PriceAnchor{std::log(1.09), 1e-4}, agents::PriceAnchor{std::log(1.09), 1e-4},
                                           agents::PriceAnchor{std::log(1.07), 2e-4}, agents::PriceAnchor{std::log(1.07), 2e-4},
                                           agents::PriceAnchor{std::log(1.11), 0.0}};
    std::vector<AgentSpec> out;
    for (int i = 0; i < h - 1; ++i) out.push_back(anchors[i % anchors.size()]);
    out.push_back(h > 1 ? AgentSpec{agents::Naive{}} : anchors[0]);
    return out;
  }
  throw Error(ErrorKind::InvalidConfig, "unknown preset '" + std::string(name) + "' (fundamentalist, rational, bubble)");
}

void apply_setting(RunConfig& c, std::string_view raw_key, std::string_view raw_value) {
  const auto key = normalize_key(raw_key);
  const auto value = trim(raw_value);
  if (key == "input") c.input = fs::path(std::string(value));
  else if (key == "outdir") c.outdir = fs::path(std::string(value));
  else if (key == "seed") c.seed = parse_number<std::uint64_t>(key, value);
  else if (key == "min-window") {
    c.min_window = parse_number<int>(key, value);
    if (c.min_window < kDefaultMinWindow) {
      throw Error(ErrorKind::InvalidConfig, "min-window must be >= " + std::to_string(kDefaultMinWindow));
    }
  } else if (key == "theta") {
    c.theta = parse_number<double>(key, value);
    if (c.theta < 0.0 || c.theta > 1.0) bad_value(key, value);
  } else if (key == "confidence") c.confidence = parse_confidence_mode(value);
  else if (key == "params") apply_params(c.params, value);
  else if (key == "threads") c.threads = std::max(1u, parse_number<unsigned>(key, value));
  else if (key == "window") c.window = parse_window(key, value);
  else if (key == "horizon") c.horizon = parse_number<int>(key, value);
  else if (key == "preset") c.preset = std::string(value);
  else if (key == "agents") c.agents = parse_agents(value);
  else if (key == "noise-sigma") c.noise_sigma = parse_number<double>(key, value);
  else if (key == "mistrade-prob") c.mistrade_prob = parse_number<double>(key, value);
  else if (key == "initial-prices") {
    const auto parts = split(value, ',');
    if (parts.size() != 2) bad_value(key, value);
    c.initial_prices = std::array<double, 2>{parse_number<double>(key, parts[0]), parse_number<double>(key, parts[1])};
  } else if (key == "steps") {
    c.table2.steps = parse_number<int>(key, value);
    if (c.table2.steps < 0) bad_value(key, value);
  } else if (key == "a1") c.table2.a1 = parse_number<double>(key, value);
  else if (key == "a2") c.table2.a2 = parse_number<double>(key, value);
  else if (key == "b2") c.table2.b2 = parse_number<double>(key, value);
  else if (key == "p0") c.table2.initial_excess = parse_number<double>(key, value);
  else if (key == "scatter-basis") {
    if (value == "excess") c.scatter_basis = ScatterBasis::Excess;
    else if (value == "price") c.scatter_basis = ScatterBasis::Price;
    else bad_value(key, value);
  } else {
    throw Error(ErrorKind::InvalidConfig, "unknown setting '" + std::string(raw_key) + "'");
  }
}

void apply_settings(RunConfig& config, const std::vector<Setting>& settings) {
  for (const auto& [k, v] : settings) apply_setting(config, k, v);
}

std::vector<Setting> read_settings_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::InvalidConfig, "cannot read config file " + path.string());
  std::vector<Setting> out;
  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto view = std::string_view(line);
    if (const auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
    view = trim(view);
    if (view.empty()) continue;
    const auto eq = view.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorKind::InvalidConfig, path.string() + ":" + std::to_string(line_no) + ": expected key=value",
                  line_no);
    }
    out.emplace_back(std::string(trim(view.substr(0, eq))), std::string(trim(view.substr(eq + 1))));
  }
  return out;
}

SimConfig make_sim_config(const RunConfig& config) {
  SimConfig sim;
  sim.params = config.params;
  sim.agents = config.agents ? *config.agents : preset_agents(config.preset, config.params);
  sim.horizon = config.horizon;
  sim.seed = config.seed;
  sim.return_noise_sigma = config.noise_sigma;
  sim.mistrade_prob = config.mistrade_prob;
  const double pf = config.params.fundamental();
  if (config.initial_prices) {
    sim.initial_prices = *config.initial_prices;
  } else if (!config.agents && config.preset == "bubble") {
    sim.initial_prices = {config.params.clamp(pf + 1.0), config.params.clamp(pf + 2.0)};
  } else {
    sim.initial_prices = {pf, pf};
  }
  sim.validate();
  return sim;
}

fs::path resolve_outdir(const RunConfig& config) {
  if (config.outdir) return *config.outdir;
  if (const char* env = std::getenv("BUBBLELAB_OUTDIR"); env && *env) return fs::path(env);
  return fs::current_path();
}

CommandResult cmd_simulate(const RunConfig& config) {
  const auto sim = make_sim_config(config);
  const auto dir = resolve_outdir(config);
  ensure_dir(dir);
  const auto result = run(sim);

  CommandResult out;
  const auto csv_path = dir / "simulation.csv";
  save_csv(csv_path, result.prices, &result.forecasts);
  const auto json_path = dir / "simulation.json";
  open_out(json_path) << sim_result_json(sim, result).dump(2) << '\n';
  out.files = {csv_path, json_path};
  out.messages.push_back("simulated " + std::to_string(sim.horizon) + " periods with seed " + std::to_string(sim.seed) +
                         "; final price " + format_fixed(result.prices.values().tail(1)(0), 2));
  return out;
}

CommandResult cmd_sweep(const RunConfig& config) {
  const auto table = load_input(config);
  const auto dir = resolve_outdir(config);
  ensure_dir(dir);
  const auto window = sweep_window(config, table.prices);
  const auto excess = excess_series(table.prices, config.params);
  const auto bounds = SweepBounds::covering(window, config.min_window);
  const SweepOptions options{config.confidence, config.threads};

  CommandResult out;
  nlohmann::json summary = {{"input", config.input->string()},
                            {"window", window},
                            {"min_window", config.min_window},
                            {"confidence", to_string(config.confidence)},
                            {"notes", nlohmann::json::array()}};
  for (const auto model : {ModelTag::Price, ModelTag::Return}) {
    const auto grid = sweep(excess, model, bounds, options);
    const auto name = std::string(to_string(model));
    const auto path = dir / ("sweep_" + name + ".csv");
    auto file = open_out(path);
    write_grid_csv(file, grid);
    out.files.push_back(path);
    const auto s = summarize(grid);
    summary[name] = s;
    if (s.valid == 0) {
      std::string note = name + " model: no valid cells";
      for (const auto& [kind, count] : s.errors) note += "; " + std::string(to_string(kind)) + " x" + std::to_string(count);
      summary["notes"].push_back(note);
      out.messages.push_back(note);
    } else {
      out.messages.push_back(name + " model: " + std::to_string(s.significant) + "/" + std::to_string(s.valid) +
                             " valid windows significant (fraction " + fixed(*s.fraction) + ")");
    }
  }
  const auto json_path = dir / "sweep_summary.json";
  open_out(json_path) << summary.dump(2) << '\n';
  out.files.push_back(json_path);
  return out;
}

CommandResult cmd_classify(const RunConfig& config) {
  const auto table = load_input(config);
  const auto dir = resolve_outdir(config);
  ensure_dir(dir);
  ClassifyThresholds thresholds{config.theta, config.min_window, config.confidence, config.threads};
  const auto verdict = config.window
                           ? classify_window(table.prices, config.params, analysis_window(config, table.prices), thresholds)
                           : classify_series(table.prices, config.params, thresholds);

  CommandResult out;
  const auto path = dir / "verdict.json";
  open_out(path) << nlohmann::json(verdict).dump(2) << '\n';
  out.files.push_back(path);
  std::string line = "classification: " + std::string(describe(verdict.label)) + " (" +
                     std::string(to_string(verdict.label)) + ")";
  if (verdict.bubble_window) line += ", window " + to_string(*verdict.bubble_window);
  line += ", price fraction " + fixed(verdict.price_fraction) + ", return fraction " + fixed(verdict.return_fraction);
  out.messages.push_back(line);
  return out;
}

std::string cmd_table2(const RunConfig& config, CommandResult* result) {
  std::ostringstream csv;
  write_table2_csv(csv, table2(config.table2));
  const bool has_outdir = config.outdir || (std::getenv("BUBBLELAB_OUTDIR") && *std::getenv("BUBBLELAB_OUTDIR"));
  if (has_outdir) {
    const auto dir = resolve_outdir(config);
    ensure_dir(dir);
    const auto path = dir / "table2.csv";
    open_out(path) << csv.str();
    if (result) result->files.push_back(path);
  }
  return csv.str();
}

CommandResult cmd_plotdata(const RunConfig& config) {
  const auto table = load_input(config);
  const auto dir = resolve_outdir(config);
  ensure_dir(dir);
  const auto& prices = table.prices;
  const double pf = fundamental_price(config.params);
  const auto excess = excess_series(prices, config.params);

  CommandResult out;
  {
    const auto path = dir / "plot_prices.csv";
    auto f = open_out(path);
    f << "t,price,fundamental,excess\n";
    for (Eigen::Index i = 0; i < prices.size(); ++i) {
      f << prices.t0() + i << ',' << format_number(prices.values()(i)) << ',' << format_number(pf) << ','
        << format_number(excess.values()(i)) << '\n';
    }
    out.files.push_back(path);
  }
  if (table.forecasts) {
    const auto path = dir / "plot_forecasts.csv";
    auto f = open_out(path);
    write_csv(f, prices, &*table.forecasts);
    out.files.push_back(path);
  } else {
    out.messages.push_back("notice: input has no forecast columns; plot_forecasts.csv skipped");
  }
  {
    const auto points = config.scatter_basis == ScatterBasis::Excess ? return_scatter(excess) : return_scatter(prices);
    const auto path = dir / "plot_return_scatter.csv";
    auto f = open_out(path);
    f << "t,return,next_return,diagonal,above_diagonal\n";
    for (const auto& p : points) {
      f << p.t << ',' << format_number(p.current) << ',' << format_number(p.next) << ',' << format_number(p.current)
        << ',' << format_number(p.above_diagonal()) << '\n';
    }
    out.files.push_back(path);
  }
  const auto bounds = SweepBounds::covering(sweep_window(config, prices), config.min_window);
  for (const auto model : {ModelTag::Price, ModelTag::Return}) {
    const auto grid = sweep(excess, model, bounds, {config.confidence, config.threads});
    const auto path = dir / ("plot_grid_" + std::string(to_string(model)) + ".csv");
    auto f = open_out(path);
    write_grid_csv(f, grid);
    out.files.push_back(path);
  }
  return out;
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidConfig: return kConfigError;
    case ErrorKind::Io:
    case ErrorKind::MalformedRow:
    case ErrorKind::NonContiguous:
    case ErrorKind::OutOfRange: return kIngestionError;
    default: return kComputationError;
  }
}

}  // namespace bubblelab::cli
