#include "fquake/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "fquake/backtest.hpp"
#include "fquake/dma.hpp"
#include "fquake/experiment.hpp"
#include "fquake/fitstats.hpp"
#include "fquake/report.hpp"
#include "fquake/rng.hpp"
#include "fquake/series.hpp"
#include "fquake/text.hpp"
#include "fquake/wealth.hpp"

namespace fquake::cli {
namespace {

constexpr const char* kVersion = "1.0.0";
// Index of the stream reserved for synthetic series; run indices stay below 2^32.
constexpr std::uint64_t kSeriesStream = std::uint64_t{1} << 32;
constexpr double kSizeXMin = 5.0;
constexpr double kWealthXMin = CapitalLedger::kInitialCapital;
constexpr std::size_t kDefaultDays = 3684;

struct ExperimentConfig {
  std::string command;
  std::string figure;

  std::string input;
  std::string column = "0";
  std::string date_column;
  std::string out;
  std::uint64_t seed = 42;
  std::size_t runs = 10;
  unsigned workers = 1;

  std::string synth_model = "gbm";
  std::optional<std::size_t> days;
  double start = 1000.0;
  double drift = 0.0;
  double sigma = 0.01;

  std::size_t points_per_decade = 24;
  std::size_t sliding_window = 1000;
  std::size_t sliding_step = 20;

  std::vector<std::size_t> windows{3, 9, 18, 30};
  std::size_t mom_lag = 7;
  std::size_t rsi_period = 14;
  std::size_t rsi_trend = 14;

  std::string network = "sw";
  std::size_t side = 40;
  double rewire_p = 0.02;
  std::size_t nodes = 1600;
  std::size_t links = 2;

  std::optional<double> alpha;
  double threshold = 1.0;
  double rnd_fraction = 0.0;
  bool rnd_hubs = false;
  long hub_k_min = 50;
  std::size_t quakes = 0;
  bool wrap = false;

  std::optional<double> x_min;
  double bins_per_decade = 5.0;

  double resolved_alpha() const { return alpha ? *alpha : (network == "sf" ? 0.95 : 0.84); }
};

Json config_json(const ExperimentConfig& c) {
  Json j;
  j["input"] = c.input;
  j["column"] = c.column;
  j["date_column"] = c.date_column;
  j["seed"] = c.seed;
  j["runs"] = c.runs;
  j["synth_model"] = c.synth_model;
  j["days"] = c.days ? Json(*c.days) : Json(nullptr);
  j["start"] = c.start;
  j["drift"] = c.drift;
  j["sigma"] = c.sigma;
  j["points_per_decade"] = c.points_per_decade;
  j["sliding_window"] = c.sliding_window;
  j["sliding_step"] = c.sliding_step;
  j["windows"] = c.windows;
  j["mom_lag"] = c.mom_lag;
  j["rsi_period"] = c.rsi_period;
  j["rsi_trend"] = c.rsi_trend;
  j["network"] = c.network;
  j["side"] = c.side;
  j["rewire_p"] = c.rewire_p;
  j["nodes"] = c.nodes;
  j["links"] = c.links;
  j["alpha"] = c.resolved_alpha();
  j["threshold"] = c.threshold;
  j["rnd_fraction"] = c.rnd_fraction;
  j["rnd_hubs"] = c.rnd_hubs;
  j["hub_k_min"] = c.hub_k_min;
  j["quakes"] = c.quakes;
  j["wrap"] = c.wrap;
  j["x_min"] = c.x_min ? Json(*c.x_min) : Json(nullptr);
  j["bins_per_decade"] = c.bins_per_decade;
  return j;
}

// ---------------------------------------------------------------------------

struct Context {
  ExperimentConfig cfg;
  OutputSet files;
  Json summary = Json::object();
  Json source = Json::object();
  std::vector<std::string> warnings;
};

ColumnRef column_ref(const std::string& s) {
  if (!s.empty() && std::all_of(s.begin(), s.end(), [](char ch) { return ch >= '0' && ch <= '9'; })) {
    return static_cast<std::size_t>(std::stoull(s));
  }
  return s;
}

StrategySpec strategy_spec(const ExperimentConfig& c, StrategyKind kind) {
  StrategySpec s{kind};
  s.mom_lag = c.mom_lag;
  s.rsi_period = c.rsi_period;
  s.rsi_trend = c.rsi_trend;
  return s;
}

IndexSeries synthetic(const ExperimentConfig& c, std::size_t days) {
  const SynthParams params{c.start, c.drift, c.sigma};
  return synth_series(parse_synth_model(c.synth_model), days, params,
                      derive_seed(c.seed, kSeriesStream));
}

Json synthetic_source(const ExperimentConfig& c, std::size_t days) {
  Json j;
  j["synthetic"] = to_string(parse_synth_model(c.synth_model));
  j["days"] = days;
  j["start"] = c.start;
  j["drift"] = c.drift;
  j["sigma"] = c.sigma;
  j["seed"] = derive_seed(c.seed, kSeriesStream);
  return j;
}

/// The index series of a command: --input if given, otherwise a synthetic
/// series of the requested length, noted as a warning.
IndexSeries acquire_series(Context& ctx, std::size_t fallback_days) {
  const auto& c = ctx.cfg;
  if (!c.input.empty()) {
    CsvColumns cols;
    cols.value = column_ref(c.column);
    if (!c.date_column.empty()) cols.date = column_ref(c.date_column);
    auto series = load_series(c.input, cols);
    ctx.source = Json::object();
    ctx.source["input"] = c.input;
    ctx.source["column"] = c.column;
    ctx.source["rows"] = series.size();
    ctx.source["digest_fnv1a"] = file_digest(c.input);
    return series;
  }
  const std::size_t days = c.days.value_or(fallback_days);
  ctx.warnings.push_back("no --input given: using a synthetic " + c.synth_model +
                         " series of " + std::to_string(days) + " days");
  ctx.source = synthetic_source(c, days);
  return synthetic(c, days);
}

NetworkSpec network_spec(const ExperimentConfig& c) {
  NetworkSpec n;
  n.topology = c.network == "sf" ? Topology::ScaleFree : Topology::SmallWorld2D;
  n.side = c.side;
  n.rewire_p = c.rewire_p;
  n.nodes = c.nodes;
  n.links = c.links;
  return n;
}

QuakeConfig quake_config(const ExperimentConfig& c) {
  QuakeConfig q;
  q.alpha = c.resolved_alpha();
  q.threshold = c.threshold;
  q.placement = c.rnd_hubs ? RandomPlacement::Hubs
                           : (c.rnd_fraction > 0.0 ? RandomPlacement::UniformFraction
                                                   : RandomPlacement::None);
  q.rnd_fraction = c.rnd_fraction;
  q.hub_k_min = c.hub_k_min;
  q.rsi = strategy_spec(c, StrategyKind::Rsi);
  q.max_quakes = c.quakes;
  q.wrap_series = c.wrap;
  return q;
}

EnsembleConfig ensemble_config(const ExperimentConfig& c) {
  EnsembleConfig e;
  e.network = network_spec(c);
  e.quake = quake_config(c);
  e.runs = c.runs;
  e.seed = c.seed;
  e.workers = c.workers;
  return e;
}

/// Checks every module precondition before any work starts.
void validate(const ExperimentConfig& c) {
  if (c.runs == 0) throw std::invalid_argument("--runs must be at least 1");
  if (c.workers == 0) throw std::invalid_argument("--workers must be at least 1");
  if (c.days && *c.days < 2) throw std::invalid_argument("--days must be at least 2");
  if (!(c.start > 0.0)) throw std::invalid_argument("--start must be positive");
  if (!(c.sigma >= 0.0)) throw std::invalid_argument("--sigma must be non-negative");
  parse_synth_model(c.synth_model);
  if (c.points_per_decade == 0) throw std::invalid_argument("--points-per-decade must be positive");
  if (c.sliding_step == 0) throw std::invalid_argument("--sliding-step must be positive");
  if (c.windows.empty()) throw std::invalid_argument("--windows needs at least one value");
  for (const auto w : c.windows) {
    BacktestConfig b;
    b.windows = w;
    b.runs = c.runs;
    b.strategies = {strategy_spec(c, StrategyKind::Rnd), strategy_spec(c, StrategyKind::Mom),
                    strategy_spec(c, StrategyKind::Rsi)};
    b.validate();
  }
  if (c.network == "sw") {
    if (c.side < 2) throw std::invalid_argument("--side must be at least 2");
    if (!(c.rewire_p >= 0.0 && c.rewire_p <= 1.0)) {
      throw std::invalid_argument("--rewire must lie in [0, 1]");
    }
  } else if (c.links == 0 || c.nodes <= c.links) {
    throw std::invalid_argument("--links must be at least 1 and below --nodes");
  }
  if (c.rnd_hubs && c.rnd_fraction > 0.0) {
    throw std::invalid_argument("--rnd-hubs and --rnd-fraction are exclusive");
  }
  quake_config(c).validate();
  if (c.x_min && !(*c.x_min > 0.0)) throw std::invalid_argument("--x-min must be positive");
  if (!(c.bins_per_decade > 0.0)) throw std::invalid_argument("--bins-per-decade must be positive");
}

// ---------------------------------------------------------------------------

Json try_compare(std::span<const double> values, double x_min) {
  try {
    return comparison_json(compare_models(values, x_min));
  } catch (const std::invalid_argument& e) {
    Json j;
    j["error"] = e.what();
    return j;
  }
}

std::string run_dir(std::size_t r) {
  std::string s = std::to_string(r);
  return "run-" + std::string(s.size() < 2 ? 2 - s.size() : 0, '0') + s + "/";
}

/// Per-run record files and merged histograms of one ensemble under prefix.
Json ensemble_report(Context& ctx, const EnsembleResult& ens, const std::string& prefix) {
  const auto& c = ctx.cfg;
  const double size_x_min = c.x_min.value_or(kSizeXMin);
  Json runs = Json::array();
  for (std::size_t r = 0; r < ens.runs.size(); ++r) {
    const auto& run = ens.runs[r];
    const auto dir = prefix + run_dir(r);
    ctx.files.add(dir + "quakes.csv", quake_table(run.result.quakes));
    ctx.files.add(dir + "wealth.csv", wealth_table(run.network, run.result));
    ctx.files.add(dir + "edges.csv", edge_table(run.network));
    ctx.files.add(dir + "network.json", network_json(run.network));
    const auto rnd = std::count(run.result.kinds.begin(), run.result.kinds.end(), TraderKind::Rnd);
    Json j;
    j["network_seed"] = run.network_seed;
    j["dynamics_seed"] = run.dynamics_seed;
    j["quakes"] = run.result.quakes.size();
    j["steps"] = run.result.steps;
    j["random_traders"] = rnd;
    j["random_bets"] = run.result.random_bets;
    j["max_size"] = ens.max_size_per_run()[r];
    runs.push_back(j);
  }

  Json out;
  out["runs"] = runs;
  const auto sizes = ens.cumulated_sizes();
  Json cum;
  cum["quakes"] = sizes.size();
  cum["max_size"] = ens.max_size();
  if (!sizes.empty()) {
    ctx.files.add(prefix + "size_histogram.csv",
                  histogram_table(log_binned_histogram(sizes, c.bins_per_decade)));
    cum["fit"] = try_compare(sizes, size_x_min);
  }
  out["sizes"] = cum;

  const auto all = ens.capitals();
  const auto rnd = ens.capitals(TraderKind::Rnd);
  Json wealth;
  wealth["all"] = wealth_json(wealth_summary(all));
  ctx.files.add(prefix + "wealth_histogram.csv",
                histogram_table(log_binned_histogram(all, c.bins_per_decade)));
  if (!rnd.empty()) {
    wealth["rnd"] = wealth_json(wealth_summary(rnd));
    ctx.files.add(prefix + "wealth_rnd_histogram.csv",
                  histogram_table(log_binned_histogram(rnd, c.bins_per_decade)));
  }
  wealth["fit"] = try_compare(all, kWealthXMin);
  out["wealth"] = wealth;
  return out;
}

// ---------------------------------------------------------------------------

void cmd_analyze(Context& ctx) {
  const auto& c = ctx.cfg;
  const auto series = acquire_series(ctx, kDefaultDays);
  DmaGrid grid;
  grid.points_per_decade = c.points_per_decade;
  const auto profile = hurst_global(series, grid);

  CsvTable dma({"n", "sigma"});
  for (std::size_t i = 0; i < profile.n.size(); ++i) dma.row(profile.n[i], profile.sigma[i]);
  ctx.files.add("dma_sigma.csv", dma);

  CsvTable ret({"index", "value"});
  const auto r = returns(series);
  for (std::size_t j = 0; j < r.values.size(); ++j) ret.row(j, r.values[j]);
  ctx.files.add("returns.csv", ret);

  Json global;
  global["days"] = series.size();
  global["hurst"] = profile.hurst;
  global["intercept"] = profile.intercept;
  global["residual"] = profile.residual;
  global["fitted_points"] = profile.fitted_points;
  ctx.summary["global"] = global;

  if (series.size() < c.sliding_window) {
    ctx.warnings.push_back("series shorter than --sliding-window: sliding Hurst skipped");
    return;
  }
  const auto sliding = hurst_sliding(series, c.sliding_window, c.sliding_step, grid, c.workers);
  CsvTable slide({"j", "H"});
  std::size_t excursions = 0;
  for (std::size_t i = 0; i < sliding.day.size(); ++i) {
    slide.row(sliding.day[i], sliding.hurst[i]);
    if (sliding.hurst[i] < 0.45 || sliding.hurst[i] > 0.55) ++excursions;
  }
  ctx.files.add("hurst_sliding.csv", slide);
  const auto ms = mean_std(sliding.hurst);
  Json sj;
  sj["window"] = sliding.window;
  sj["step"] = sliding.step;
  sj["windows"] = sliding.day.size();
  sj["mean"] = ms.mean;
  sj["std"] = ms.std;
  sj["min"] = *std::min_element(sliding.hurst.begin(), sliding.hurst.end());
  sj["max"] = *std::max_element(sliding.hurst.begin(), sliding.hurst.end());
  sj["outside_045_055"] = excursions;
  ctx.summary["sliding"] = sj;
}

void backtest_on(Context& ctx, const IndexSeries& series, const std::vector<std::size_t>& windows) {
  const auto& c = ctx.cfg;
  Json per = Json::array();
  for (const auto nw : windows) {
    BacktestConfig b;
    b.windows = nw;
    b.runs = c.runs;
    b.strategies = {strategy_spec(c, StrategyKind::Rnd), strategy_spec(c, StrategyKind::Mom),
                    strategy_spec(c, StrategyKind::Rsi)};
    b.seed = c.seed;
    b.workers = c.workers;
    const auto stats = run_backtest(series, b);

    CsvTable t({"window", "vol", "rnd_win", "mom_win", "rsi_win"});
    CsvTable vol({"index", "value"});
    for (std::size_t w = 0; w < nw; ++w) {
      t.row(w, stats.volatility[w], stats.strategies[0].win_pct[w],
            stats.strategies[1].win_pct[w], stats.strategies[2].win_pct[w]);
      vol.row(w, stats.volatility[w]);
    }
    const auto tag = std::to_string(nw);
    ctx.files.add("backtest_nw" + tag + ".csv", t);
    ctx.files.add("volatility_nw" + tag + ".csv", vol);

    Json j;
    j["windows"] = nw;
    j["window_size"] = stats.window_size;
    j["first_scored_day"] = stats.first_scored_day;
    j["scored_days"] = stats.scored_days;
    for (const auto& s : stats.strategies) {
      Json sj;
      sj["mean_win_pct"] = s.mean_win_pct;
      sj["std_win_pct"] = s.std_win_pct;
      sj["std_win_pct_per_run"] = s.std_win_pct_per_run;
      j[to_string(s.spec.kind)] = sj;
    }
    per.push_back(j);
  }
  ctx.summary["days"] = series.size();
  ctx.summary["runs"] = c.runs;
  ctx.summary["backtests"] = per;
}

void cmd_backtest(Context& ctx, std::size_t fallback_days) {
  const auto series = acquire_series(ctx, fallback_days);
  backtest_on(ctx, series, ctx.cfg.windows);
}

void cmd_simulate(Context& ctx) {
  const auto series = acquire_series(ctx, kDefaultDays);
  const auto ens = run_ensemble(series, ensemble_config(ctx.cfg));
  ctx.summary = ensemble_report(ctx, ens, "");
}

std::vector<double> load_values(const std::string& path, const ColumnRef& column) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::vector<double> values;
  std::optional<std::size_t> col;
  std::size_t line_no = 0;
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    const auto fields = split_csv_line(line);
    if (!col) {
      if (const auto* idx = std::get_if<std::size_t>(&column)) {
        col = *idx;
        if (*col < fields.size() && !parse_double(fields[*col])) continue;  // header
      } else {
        const auto& name = std::get<std::string>(column);
        for (std::size_t i = 0; i < fields.size() && !col; ++i) {
          if (trim(fields[i]) == name) col = i;
        }
        if (!col) throw std::runtime_error(path + ": no column named '" + name + "'");
        continue;
      }
    }
    const auto where = path + ":" + std::to_string(line_no);
    if (*col >= fields.size()) throw std::runtime_error(where + ": missing column");
    const auto v = parse_double(fields[*col]);
    if (!v || !std::isfinite(*v)) {
      throw std::runtime_error(where + ": non-numeric value '" + trim(fields[*col]) + "'");
    }
    values.push_back(*v);
  }
  return values;
}

void cmd_fit(Context& ctx) {
  const auto& c = ctx.cfg;
  if (c.input.empty()) throw std::invalid_argument("fit needs --input");
  const auto raw = load_values(c.input, column_ref(c.column));
  std::vector<double> values;
  for (const double v : raw) {
    if (v != 0.0) values.push_back(std::fabs(v));
  }
  if (values.size() < 2) throw std::invalid_argument(c.input + ": fewer than 2 non-zero values");
  ctx.source = Json::object();
  ctx.source["input"] = c.input;
  ctx.source["column"] = c.column;
  ctx.source["rows"] = raw.size();
  ctx.source["digest_fnv1a"] = file_digest(c.input);

  const double x_min = c.x_min.value_or(*std::min_element(values.begin(), values.end()));
  ctx.files.add("histogram.csv", histogram_table(log_binned_histogram(values, c.bins_per_decade)));
  const auto cmp = compare_models(values, x_min);
  ctx.files.add("fit.json", comparison_json(cmp));
  ctx.summary["values"] = values.size();
  ctx.summary["dropped_zero"] = raw.size() - values.size();
  ctx.summary["comparison"] = comparison_json(cmp);
}

void cmd_synth(Context& ctx) {
  const auto& c = ctx.cfg;
  const std::size_t days = c.days.value_or(kDefaultDays);
  const auto series = synthetic(c, days);
  ctx.source = synthetic_source(c, days);
  CsvTable t({"close"});
  for (const double v : series.values()) t.row(v);
  ctx.files.add("series.csv", t);
  const auto f = series.values();
  ctx.summary["days"] = days;
  ctx.summary["first"] = f.front();
  ctx.summary["last"] = f.back();
  ctx.summary["min"] = *std::min_element(f.begin(), f.end());
  ctx.summary["max"] = *std::max_element(f.begin(), f.end());
}

// --- reproduce recipes ------------------------------------------------------

void fig_backtest(Context& ctx, std::size_t fallback_days, std::vector<std::size_t> windows) {
  const auto series = acquire_series(ctx, fallback_days);
  backtest_on(ctx, series, windows);
}

void fig7(Context& ctx) {
  auto& c = ctx.cfg;
  const auto series = acquire_series(ctx, kDefaultDays);
  auto e = ensemble_config(c);
  e.runs = 1;
  auto first = run_ensemble(series, e);
  const auto& quakes = first.runs[0].result.quakes;
  std::size_t largest = 0;
  for (std::size_t i = 0; i < quakes.size(); ++i) {
    if (std::labs(quakes[i].size_signed) > std::labs(quakes[largest].size_signed)) largest = i;
  }
  // Same seeds, so the second pass replays the first one exactly.
  e.quake.snapshot_quakes = {largest};
  const auto again = run_ensemble(series, e);
  const auto& run = again.runs[0];
  ctx.files.add("quakes.csv", quake_table(run.result.quakes));
  ctx.files.add("network.json", network_json(run.network));

  Json snaps = Json::array();
  for (const auto& snap : run.result.snapshots) {
    std::vector<bool> member(snap.information.size(), false);
    for (const auto v : snap.members) member[v] = true;
    const bool lattice = run.network.params().topology == Topology::SmallWorld2D;
    const std::size_t side = run.network.params().side;
    CsvTable t({"agent", "x", "y", "information", "member"});
    for (std::size_t i = 0; i < snap.information.size(); ++i) {
      t.row(i, lattice ? static_cast<long>(i % side) : -1L, lattice ? static_cast<long>(i / side) : -1L,
            snap.information[i], member[i] ? 1 : 0);
    }
    ctx.files.add("snapshot_q" + std::to_string(snap.ordinal) + ".csv", t);
    Json sj;
    sj["ordinal"] = snap.ordinal;
    sj["size"] = snap.members.size();
    snaps.push_back(sj);
  }
  ctx.summary["quakes"] = run.result.quakes.size();
  ctx.summary["largest"] = run.result.quakes.empty() ? Json(nullptr)
                                                     : Json(run.result.quakes[largest].size_signed);
  ctx.summary["snapshots"] = snaps;
}

std::string percent_tag(double p) {
  const auto v = static_cast<long>(std::lround(p * 100.0));
  std::string s = std::to_string(v);
  return std::string(s.size() < 3 ? 3 - s.size() : 0, '0') + s;
}

void fig8(Context& ctx) {
  auto& c = ctx.cfg;
  const auto series = acquire_series(ctx, kDefaultDays);
  Json cases = Json::array();
  for (const double p : {0.0, 0.05, 0.10}) {
    auto e = ensemble_config(c);
    e.quake.rnd_fraction = p;
    e.quake.placement = p > 0.0 ? RandomPlacement::UniformFraction : RandomPlacement::None;
    const auto ens = run_ensemble(series, e);
    Json j;
    j["rnd_fraction"] = p;
    j["report"] = ensemble_report(ctx, ens, "p" + percent_tag(p) + "/");
    cases.push_back(j);
  }
  ctx.summary["cases"] = cases;
}

void fig10(Context& ctx) {
  auto& c = ctx.cfg;
  c.network = "sf";
  const auto series = acquire_series(ctx, kDefaultDays);
  auto base = ensemble_config(c);
  base.quake.placement = RandomPlacement::None;
  base.quake.rnd_fraction = 0.0;
  const auto rsi = run_ensemble(series, base);
  auto hubs = base;
  hubs.quake.placement = RandomPlacement::Hubs;
  const auto mixed = run_ensemble(series, hubs);
  ctx.summary["rsi_only"] = ensemble_report(ctx, rsi, "rsi-only/");
  ctx.summary["hubs_random"] = ensemble_report(ctx, mixed, "hubs-random/");
  const double a = static_cast<double>(rsi.max_size());
  const double b = static_cast<double>(mixed.max_size());
  ctx.summary["max_size_reduction"] = a > 0.0 ? 1.0 - b / a : 0.0;
}

/// One realisation with capital snapshots after each quarter of the quakes.
Json capital_evolution(Context& ctx, const IndexSeries& series, double alpha, const std::string& prefix) {
  const auto& c = ctx.cfg;
  const std::uint64_t run_seed = derive_seed(c.seed, 0);
  const auto net = network_spec(c).build(derive_seed(run_seed, 0));
  auto q = quake_config(c);
  q.alpha = alpha;
  q.seed = derive_seed(run_seed, 1);
  QuakeSimulation sim(net, series, q);
  const std::size_t total = c.quakes != 0 ? c.quakes : series.size() - sim.first_day();
  std::vector<std::size_t> marks;
  for (std::size_t k = 1; k <= 4; ++k) marks.push_back(std::max<std::size_t>(1, (total * k + 2) / 4));

  CsvTable caps({"checkpoint", "quakes", "agent", "capital"});
  Json checkpoints = Json::array();
  std::size_t next = 0;
  auto record = [&](std::size_t k) {
    const auto capitals = sim.ledger().capitals();
    for (std::size_t i = 0; i < capitals.size(); ++i) caps.row(k + 1, sim.quakes().size(), i, capitals[i]);
    ctx.files.add(prefix + "capital_histogram_c" + std::to_string(k + 1) + ".csv",
                  histogram_table(log_binned_histogram(capitals, c.bins_per_decade)));
    Json j;
    j["checkpoint"] = k + 1;
    j["quakes"] = sim.quakes().size();
    j["wealth"] = wealth_json(wealth_summary(capitals));
    checkpoints.push_back(j);
  };
  while (next < marks.size()) {
    const bool more = sim.step();
    while (next < marks.size() && (sim.quakes().size() >= marks[next] || !more)) record(next++);
    if (!more) break;
  }
  ctx.files.add(prefix + "capitals.csv", caps);
  Json out;
  out["alpha"] = alpha;
  out["quakes"] = sim.quakes().size();
  out["checkpoints"] = checkpoints;
  out["final_fit"] = try_compare(sim.ledger().capitals(), kWealthXMin);
  return out;
}

void fig11(Context& ctx) {
  const auto series = acquire_series(ctx, kDefaultDays);
  ctx.summary = capital_evolution(ctx, series, ctx.cfg.resolved_alpha(), "");
}

void fig12(Context& ctx) {
  auto& c = ctx.cfg;
  const auto series = acquire_series(ctx, kDefaultDays);
  Json cases = Json::array();
  for (const double alpha : {0.84, 0.40, 0.00}) {
    auto e = ensemble_config(c);
    e.quake.alpha = alpha;
    const auto ens = run_ensemble(series, e);
    const auto tag = "alpha" + percent_tag(alpha) + "/";
    Json j;
    j["alpha"] = alpha;
    j["evolution"] = capital_evolution(ctx, series, alpha, tag + "evolution/");
    j["report"] = ensemble_report(ctx, ens, tag);
    cases.push_back(j);
  }
  ctx.summary["cases"] = cases;
}

void fig13(Context& ctx) {
  auto& c = ctx.cfg;
  if (!c.rnd_hubs && c.rnd_fraction == 0.0) c.rnd_fraction = 0.10;
  const auto series = acquire_series(ctx, kDefaultDays);
  const auto ens = run_ensemble(series, ensemble_config(c));
  ctx.summary = ensemble_report(ctx, ens, "");
}

void cmd_reproduce(Context& ctx) {
  const auto& fig = ctx.cfg.figure;
  if (fig == "fig2") return cmd_analyze(ctx);
  if (fig == "fig3") return fig_backtest(ctx, 3684, ctx.cfg.windows);
  if (fig == "fig4") return fig_backtest(ctx, 5750, ctx.cfg.windows);
  if (fig == "fig5") return fig_backtest(ctx, 3684, {30});
  if (fig == "fig7") return fig7(ctx);
  if (fig == "fig8") return fig8(ctx);
  if (fig == "fig10") return fig10(ctx);
  if (fig == "fig11") return fig11(ctx);
  if (fig == "fig12") return fig12(ctx);
  if (fig == "fig13") return fig13(ctx);
  throw std::invalid_argument("unknown figure " + fig);
}

// ---------------------------------------------------------------------------

void define_options(CLI::App& app, ExperimentConfig& c) {
  app.add_option("--input", c.input, "CSV file with daily index closes");
  app.add_option("--column", c.column, "value column: zero-based index or header name");
  app.add_option("--date-column", c.date_column, "optional date column: index or header name");
  app.add_option("--out", c.out, "output directory (default $FQUAKE_OUT_DIR/<command>)");
  app.add_option("--seed", c.seed, "master seed");
  app.add_option("--runs", c.runs, "independent runs per experiment");
  app.add_option("--workers", c.workers, "worker threads");

  app.add_option("--synth-model", c.synth_model, "synthetic series model")
      ->check(CLI::IsMember({"gbm", "walk", "iid-gaussian-walk"}));
  app.add_option("--days", c.days, "synthetic series length");
  app.add_option("--start", c.start, "synthetic series first value");
  app.add_option("--drift", c.drift, "synthetic series drift");
  app.add_option("--sigma", c.sigma, "synthetic series step or log-return std");

  app.add_option("--points-per-decade", c.points_per_decade, "DMA window grid density");
  app.add_option("--sliding-window", c.sliding_window, "sliding Hurst window T_s");
  app.add_option("--sliding-step", c.sliding_step, "sliding Hurst step s");

  app.add_option("--windows", c.windows, "trading-window counts N_w, comma separated")->delimiter(',');
  app.add_option("--mom-lag", c.mom_lag, "momentum lag in days");
  app.add_option("--rsi-period", c.rsi_period, "RSI lookback in days");
  app.add_option("--rsi-trend", c.rsi_trend, "price/RSI trend lookback in days");

  app.add_option("--network", c.network, "sw (2D small world) or sf (scale free)")
      ->check(CLI::IsMember({"sw", "sf"}));
  app.add_option("--side", c.side, "small-world lattice side L");
  app.add_option("--rewire", c.rewire_p, "small-world rewiring probability");
  app.add_option("--nodes", c.nodes, "scale-free node count");
  app.add_option("--links", c.links, "scale-free links per new node");

  app.add_option("--alpha", c.alpha, "information transfer fraction (0.84 sw, 0.95 sf)");
  app.add_option("--threshold", c.threshold, "information threshold");
  app.add_option("--rnd-fraction", c.rnd_fraction, "fraction of random traders");
  app.add_flag("--rnd-hubs", c.rnd_hubs, "make every hub a random trader");
  app.add_option("--hub-kmin", c.hub_k_min, "hubs have degree above this");
  app.add_option("--quakes", c.quakes, "quakes per run (0: until the series ends)");
  app.add_flag("--wrap", c.wrap, "restart the series instead of stopping at its end");

  app.add_option("--x-min", c.x_min, "lower cut-off for distribution fits");
  app.add_option("--bins-per-decade", c.bins_per_decade, "log-binned histogram density");
}

std::filesystem::path output_dir(const ExperimentConfig& c) {
  if (!c.out.empty()) return c.out;
  const char* env = std::getenv("FQUAKE_OUT_DIR");
  const std::filesystem::path base = env && *env ? env : "fquake-out";
  return base / (c.command == "reproduce" ? c.figure : c.command);
}

Json manifest(const Context& ctx) {
  Json m;
  m["tool"] = "fquake";
  m["version"] = kVersion;
  m["command"] = ctx.cfg.command;
  if (!ctx.cfg.figure.empty()) m["figure"] = ctx.cfg.figure;
  m["seed"] = ctx.cfg.seed;
  m["rng"] = "xoshiro256** seeded by splitmix64; run r uses derive_seed(seed, r)";
  m["config"] = config_json(ctx.cfg);
  m["source"] = ctx.source;
  m["warnings"] = ctx.warnings;
  m["files"] = ctx.files.names();
  return m;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  ExperimentConfig c;
  CLI::App app{"Financial quakes: herding avalanches among technical traders", "fquake"};
  app.set_version_flag("--version", kVersion);
  app.set_config("--config", "", "key=value file; flags given on the command line win");
  app.require_subcommand(1);
  define_options(app, c);

  auto* analyze = app.add_subcommand("analyze", "DMA profile and Hurst exponents")->fallthrough();
  auto* backtest = app.add_subcommand("backtest", "RND/MOM/RSI win rates per trading window")->fallthrough();
  auto* simulate = app.add_subcommand("simulate", "financial-quake runs on a trader network")->fallthrough();
  auto* fit = app.add_subcommand("fit", "power-law vs exponential fit of a CSV column")->fallthrough();
  auto* synth = app.add_subcommand("synth", "write a synthetic index series")->fallthrough();
  auto* reproduce = app.add_subcommand("reproduce", "recipe for one figure of the study")->fallthrough();
  reproduce->add_option("figure", c.figure, "figure recipe")
      ->required()
      ->check(CLI::IsMember({"fig2", "fig3", "fig4", "fig5", "fig7", "fig8", "fig10", "fig11",
                             "fig12", "fig13"}));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e, out, err);
    err << "fquake: error: " << e.what() << '\n';
    return e.get_exit_code();
  }

  for (auto* sub : {analyze, backtest, simulate, fit, synth, reproduce}) {
    if (sub->parsed()) c.command = sub->get_name();
  }

  Context ctx;
  try {
    validate(c);
    ctx.cfg = c;
    if (c.command == "analyze") cmd_analyze(ctx);
    else if (c.command == "backtest") cmd_backtest(ctx, kDefaultDays);
    else if (c.command == "simulate") cmd_simulate(ctx);
    else if (c.command == "fit") cmd_fit(ctx);
    else if (c.command == "synth") cmd_synth(ctx);
    else cmd_reproduce(ctx);

    ctx.files.add("summary.json", ctx.summary);
    const auto m = manifest(ctx);
    ctx.files.add("manifest.json", m);
    const auto dir = output_dir(ctx.cfg);
    ctx.files.write(dir);

    Json report;
    report["command"] = c.command;
    if (!c.figure.empty()) report["figure"] = c.figure;
    report["out_dir"] = dir.string();
    report["files"] = ctx.files.names();
    report["warnings"] = ctx.warnings;
    report["summary"] = ctx.summary;
    out << dump_json(report);
    return 0;
  } catch (const std::exception& e) {
    std::string msg = e.what();
    std::replace(msg.begin(), msg.end(), '\n', ' ');
    err << "fquake: error: " << msg << '\n';
    return 1;
  }
}

}  // namespace fquake::cli
