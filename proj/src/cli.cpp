#include "seirah/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>
#include <spdlog/spdlog.h>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "seirah/config.hpp"
#include "seirah/data_io.hpp"
#include "seirah/error.hpp"
#include "seirah/inference.hpp"
#include "seirah/sweep.hpp"

namespace seirah {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct CommonOptions {
  std::string config_path;
  std::vector<std::string> overrides;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> workers;
  std::optional<std::string> out_dir;
  bool quiet = false;
};

void add_common(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("--config", o.config_path, "Run configuration (JSON)")->required();
  cmd->add_option("--set", o.overrides, "Override a config field, e.g. --set network.work.p=0.2");
  cmd->add_option("--seed", o.seed, "Master seed (overrides seeds.master)");
  cmd->add_option("--workers", o.workers, "Worker threads (default: hardware concurrency)");
  cmd->add_option("--out-dir", o.out_dir, "Output directory (overrides paths.out_dir)");
  cmd->add_flag("--quiet", o.quiet, "Only print warnings and errors");
}

struct Context {
  RunConfig config;
  fs::path out;
  std::size_t workers = 1;
};

Context prepare(const CommonOptions& o) {
  auto overrides = o.overrides;
  if (o.seed) overrides.push_back("seeds.master=" + std::to_string(*o.seed));
  if (o.out_dir) overrides.push_back("paths.out_dir=" + json(*o.out_dir).dump());
  Context ctx{load_config(o.config_path, overrides)};
  spdlog::set_level(o.quiet ? spdlog::level::warn : spdlog::level::info);
  ctx.workers = o.workers.value_or(std::max(1u, std::thread::hardware_concurrency()));
  if (ctx.workers < 1) throw ValidationError("--workers", "must be >= 1");
#ifdef _OPENMP
  omp_set_num_threads(static_cast<int>(ctx.workers));
#endif
  ctx.out = ctx.config.out_dir;
  fs::create_directories(ctx.out);
  return ctx;
}

void write_manifest(const Context& ctx, const std::string& command, const std::vector<std::string>& args) {
  char hash[17];
  std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(config_hash(ctx.config.source)));
  json manifest{{"command", command},
                {"version", kVersion},
                {"config_hash", hash},
                {"master_seed", ctx.config.scenario.master_seed},
                {"topology_seed", ctx.config.scenario.topology_seed},
                {"arguments", args},
                {"config", ctx.config.source}};
  const auto path = (ctx.out / "manifest.json").string();
  std::ofstream os(path);
  if (!os) throw IoError("cannot open '" + path + "' for writing");
  os << manifest.dump(2) << '\n';
}

// Per-day indicator rows sized for the topology; constant 1 without a file.
std::vector<std::vector<double>> indicator_rows(const RunConfig& cfg, const std::string& path, std::size_t days,
                                                std::size_t regions, const ObservedSeries* align_with) {
  if (path.empty()) return std::vector<std::vector<double>>(days, std::vector<double>{1.0});
  const auto series = load_indicator(path, cfg.gaps);
  if (series.columns.size() != 1 && series.columns.size() != regions) {
    throw ValidationError("paths.indicator", "expected 1 or " + std::to_string(regions) + " indicator columns, got " +
                                                 std::to_string(series.columns.size()));
  }
  if (align_with) check_aligned(*align_with, series);
  if (series.size() < days) {
    throw ValidationError("paths.indicator", "indicator series has " + std::to_string(series.size()) +
                                                 " days, need " + std::to_string(days));
  }
  return {series.values.begin(), series.values.begin() + static_cast<std::ptrdiff_t>(days)};
}

std::vector<double> load_beta_column(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot open beta file '" + path + "'");
  std::string line;
  std::getline(is, line);
  std::vector<std::string> header;
  {
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) header.push_back(cell);
  }
  const auto col = std::find(header.begin(), header.end(), "beta") - header.begin();
  if (col == static_cast<std::ptrdiff_t>(header.size())) throw DataError(path + ": no 'beta' column");
  std::vector<double> out;
  std::size_t number = 1;
  while (std::getline(is, line)) {
    ++number;
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    for (std::ptrdiff_t c = 0; c <= col; ++c) std::getline(ss, cell, ',');
    try {
      const double b = std::stod(cell);
      if (!(b >= 0.0 && b <= 1.0)) throw DataError("");
      out.push_back(b);
    } catch (const std::exception&) {
      throw DataError(path + ":" + std::to_string(number) + ": beta must be a number in [0, 1]");
    }
  }
  return out;
}

json degree_summary(const Graph& g) {
  std::uint32_t lo = g.node_count() ? ~0u : 0, hi = 0;
  for (NodeId v = 0; v < g.node_count(); ++v) {
    lo = std::min(lo, g.degree(v));
    hi = std::max(hi, g.degree(v));
  }
  const double mean = g.node_count() ? 2.0 * static_cast<double>(g.edge_count()) / g.node_count() : 0.0;
  return {{"nodes", g.node_count()}, {"edges", g.edge_count()}, {"degree_min", lo}, {"degree_max", hi},
          {"degree_mean", mean}};
}

int cmd_generate(const CommonOptions& o, bool with_work, const std::vector<std::string>& args) {
  auto ctx = prepare(o);
  const auto topology = ctx.config.scenario.build();
  std::optional<WorkNetwork> work;
  if (with_work) work = active_work_network(topology, 1.0, derive_seed(ctx.config.scenario.master_seed, 0, 0x574B));
  write_edge_list(topology, work ? &*work : nullptr, (ctx.out / "edges.txt").string());

  json regions = json::array();
  for (std::size_t r = 0; r < topology.region_count(); ++r) {
    auto entry = degree_summary(topology.residence(r));
    entry["name"] = topology.region(r).name;
    entry["commuter_pool"] = topology.pool(r).size();
    regions.push_back(std::move(entry));
  }
  json summary{{"total_nodes", topology.node_count()},
               {"total_commuter_pool", topology.total_pool()},
               {"regions", regions}};
  if (work) summary["work_network"] = degree_summary(work->graph);
  std::ofstream(ctx.out / "summary.json") << summary.dump(2) << '\n';
  write_manifest(ctx, "generate", args);
  spdlog::info("generated {} nodes in {} regions ({} commuters) -> {}", topology.node_count(),
               topology.region_count(), topology.total_pool(), ctx.out.string());
  return kExitOk;
}

int cmd_simulate(const CommonOptions& o, std::optional<double> beta, const std::string& beta_file,
                 std::optional<std::size_t> days_flag, const std::string& indicator_flag,
                 const std::vector<std::string>& args) {
  auto ctx = prepare(o);
  const auto& cfg = ctx.config;
  std::vector<double> betas;
  std::size_t days = days_flag.value_or(cfg.days);
  const std::string beta_path = beta_file.empty() ? cfg.beta_path : beta_file;
  if (beta) {
    if (!(*beta >= 0.0 && *beta <= 1.0)) throw ValidationError("--beta", "must lie in [0, 1]");
    betas.assign(days, *beta);
  } else if (!beta_path.empty()) {
    betas = load_beta_column(beta_path);
    if (!days_flag) days = betas.size();
    if (betas.size() < days) throw ValidationError("--beta-file", "fewer beta rows than simulated days");
  } else if (cfg.beta) {
    betas.assign(days, *cfg.beta);
  } else {
    throw ValidationError("simulation.beta", "give --beta, --beta-file or simulation.beta");
  }

  const auto topology = cfg.scenario.build();
  const auto indicators = indicator_rows(cfg, indicator_flag.empty() ? cfg.indicator_path : indicator_flag, days,
                                         topology.region_count(), nullptr);
  SimState state = cfg.scenario.initial_state(topology);
  std::optional<HistoryRecorder> recorder;
  if (cfg.node_history) recorder.emplace(topology, state);
  std::vector<DailyCounts> counts;
  for (std::size_t d = 0; d < days; ++d) {
    counts.push_back(simulate_day(state, topology, betas[d], indicators[d], cfg.scenario.thresholds, {},
                                  recorder ? &*recorder : nullptr));
    spdlog::debug("day {}: E={} I={} A={} H={} new_h={}", d, counts.back().counts[1], counts.back().counts[2],
                  counts.back().counts[4], counts.back().counts[5], counts.back().new_h);
  }
  export_timeseries(counts, cfg.start_date, (ctx.out / "timeseries.csv").string());
  if (recorder) export_node_history(recorder->records(), (ctx.out / "node_history.csv").string());
  write_manifest(ctx, "simulate", args);
  spdlog::info("simulated {} days on {} nodes; cumulative H = {}", days, topology.node_count(), state.cumulative_h());
  return kExitOk;
}

struct ObservedData {
  ObservedSeries observed;
  std::vector<std::vector<double>> indicators;
};

ObservedData load_inputs(const RunConfig& cfg, const std::string& observed_flag, const std::string& indicator_flag,
                         std::size_t regions) {
  const std::string observed_path = observed_flag.empty() ? cfg.observed_path : observed_flag;
  if (observed_path.empty()) throw ValidationError("paths.observed", "no observed series given (--observed)");
  ObservedData data;
  data.observed = load_observed(observed_path, cfg.gaps);
  data.indicators = indicator_rows(cfg, indicator_flag.empty() ? cfg.indicator_path : indicator_flag,
                                   data.observed.size(), regions, &data.observed);
  return data;
}

int cmd_infer(const CommonOptions& o, const std::string& observed_flag, const std::string& indicator_flag,
              const std::vector<std::string>& args) {
  auto ctx = prepare(o);
  const auto& cfg = ctx.config;
  const auto topology = cfg.scenario.build();
  const auto data = load_inputs(cfg, observed_flag, indicator_flag, topology.region_count());
  ForwardModel model(topology, cfg.scenario.thresholds);
  const auto observed = data.observed.values();
  const auto series = infer_beta_series(model, cfg.scenario.initial_state(topology), observed, data.indicators,
                                        cfg.inference, !o.quiet);
  const Date start = data.observed.dates.front();
  export_beta_series(series, start, (ctx.out / "beta.csv").string(), (ctx.out / "beta_diagnostics.json").string());
  export_timeseries(series.canonical, start, (ctx.out / "timeseries.csv").string());
  write_manifest(ctx, "infer", args);
  spdlog::info("inferred {} days; rmse of one-step prediction = {:.4f}", series.days.size(),
               rmse(series.one_step_predicted(), observed));
  return kExitOk;
}

int cmd_sweep(const CommonOptions& o, const std::string& observed_flag, const std::string& indicator_flag,
              const std::vector<double>& p_r, const std::vector<double>& p_w, const std::vector<std::string>& args) {
  auto ctx = prepare(o);
  const auto& cfg = ctx.config;
  SweepGrid grid = cfg.grid;
  if (!p_r.empty()) grid.p_r = p_r;
  if (!p_w.empty()) grid.p_w = p_w;
  try {
    grid.validate();
  } catch (const ParameterError& e) {
    throw ValidationError("sweep", e.what());
  }
  const auto data = load_inputs(cfg, observed_flag, indicator_flag, cfg.scenario.regions.size());
  SweepSetup setup{cfg.scenario, cfg.inference, cfg.rmse_threshold, ctx.workers};
  const auto result = run_sweep(grid, setup, data.observed.values(), data.indicators);
  export_sweep(result, (ctx.out / "sweep.csv").string(), (ctx.out / "sweep.json").string());
  write_manifest(ctx, "sweep", args);
  std::size_t good = 0;
  for (const auto& c : result.cells) good += c.appropriate ? 1 : 0;
  spdlog::info("sweep finished: {} cells, {} appropriate", result.cells.size(), good);
  return kExitOk;
}

int cmd_export_fixtures(const CommonOptions& o, double beta, std::optional<double> beta_after,
                        std::optional<std::size_t> switch_day, std::optional<std::size_t> days_flag,
                        double indicator, const std::vector<std::string>& args) {
  auto ctx = prepare(o);
  const auto& cfg = ctx.config;
  const std::size_t days = days_flag.value_or(cfg.days);
  std::vector<double> betas(days, beta);
  if (beta_after) {
    for (std::size_t d = switch_day.value_or(days / 2); d < days; ++d) betas[d] = *beta_after;
  }
  for (double b : betas) {
    if (!(b >= 0.0 && b <= 1.0)) throw ValidationError("--beta", "must lie in [0, 1]");
  }
  if (!(indicator >= 0.0)) throw ValidationError("--indicator-value", "must be >= 0");

  const auto topology = cfg.scenario.build();
  SimState state = cfg.scenario.initial_state(topology);
  const std::vector<std::vector<double>> indicators(days, std::vector<double>{indicator});
  const auto counts = simulate_horizon(state, topology, betas, indicators, days, cfg.scenario.thresholds);

  ObservedSeries observed;
  IndicatorSeries ind{.columns = {"indicator"}};
  for (std::size_t d = 0; d < days; ++d) {
    const Date date = cfg.start_date + std::chrono::days{static_cast<int>(d)};
    observed.dates.push_back(date);
    observed.h.push_back(counts[d].new_h);
    ind.dates.push_back(date);
    ind.values.push_back({indicator});
  }
  write_observed(observed, (ctx.out / "observed.csv").string());
  write_indicator(ind, (ctx.out / "indicator.csv").string());
  export_timeseries(counts, cfg.start_date, (ctx.out / "ground_truth.csv").string());
  write_manifest(ctx, "export-fixtures", args);
  spdlog::info("wrote {}-day synthetic fixtures to {}", days, ctx.out.string());
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
  CLI::App app{"Interconnected SEIRAH simulation and social-infectivity inference"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  CommonOptions common;
  auto* generate = app.add_subcommand("generate", "Build the metro topology and write edge lists + summary");
  add_common(generate, common);
  bool with_work = false;
  generate->add_flag("--with-work", with_work, "Also export a full-mobility work network");

  auto* simulate = app.add_subcommand("simulate", "Forward simulation under a beta series");
  add_common(simulate, common);
  std::optional<double> beta;
  std::string beta_file, sim_indicator;
  std::optional<std::size_t> days;
  simulate->add_option("--beta", beta, "Constant beta");
  simulate->add_option("--beta-file", beta_file, "CSV with a 'beta' column, one row per day");
  simulate->add_option("--days", days, "Days to simulate");
  simulate->add_option("--indicator", sim_indicator, "Indicator CSV (default: full mobility)");

  auto* infer = app.add_subcommand("infer", "Infer daily beta from observed hospitalizations");
  add_common(infer, common);
  std::string observed_path, indicator_path;
  infer->add_option("--observed", observed_path, "Observed CSV (date,h)");
  infer->add_option("--indicator", indicator_path, "Indicator CSV");

  auto* sweep = app.add_subcommand("sweep", "Grid over (p_r, p_w) scored by fit quality");
  add_common(sweep, common);
  std::vector<double> p_r, p_w;
  sweep->add_option("--observed", observed_path, "Observed CSV (date,h)");
  sweep->add_option("--indicator", indicator_path, "Indicator CSV");
  sweep->add_option("--p-r", p_r, "Residence p values")->delimiter(',');
  sweep->add_option("--p-w", p_w, "Work p values")->delimiter(',');

  auto* fixtures = app.add_subcommand("export-fixtures", "Write synthetic observed/indicator series");
  add_common(fixtures, common);
  double fixture_beta = 0.15, indicator_value = 1.0;
  std::optional<double> beta_after;
  std::optional<std::size_t> switch_day;
  fixtures->add_option("--beta", fixture_beta, "Generating beta (before the switch)");
  fixtures->add_option("--beta-after", beta_after, "Beta after --switch-day");
  fixtures->add_option("--switch-day", switch_day, "Day index where --beta-after takes over");
  fixtures->add_option("--days", days, "Series length");
  fixtures->add_option("--indicator-value", indicator_value, "Constant commuting indicator");

  std::vector<std::string> argv_rev(args.rbegin(), args.rend());
  try {
    app.parse(argv_rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (*generate) return cmd_generate(common, with_work, args);
    if (*simulate) return cmd_simulate(common, beta, beta_file, days, sim_indicator, args);
    if (*infer) return cmd_infer(common, observed_path, indicator_path, args);
    if (*sweep) return cmd_sweep(common, observed_path, indicator_path, p_r, p_w, args);
    if (*fixtures) return cmd_export_fixtures(common, fixture_beta, beta_after, switch_day, days, indicator_value, args);
  } catch (const ValidationError& e) {
    spdlog::error("invalid configuration: {}", e.what());
    return kExitValidation;
  } catch (const ParameterError& e) {
    spdlog::error("invalid parameter: {}", e.what());
    return kExitValidation;
  } catch (const DataError& e) {
    spdlog::error("invalid input data: {}", e.what());
    return kExitValidation;
  } catch (const std::exception& e) {
    spdlog::error("{}", e.what());
    return kExitRuntime;
  }
  return kExitValidation;
}

}  // namespace seirah
