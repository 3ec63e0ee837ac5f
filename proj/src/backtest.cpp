#include "fquake/backtest.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "fquake/parallel.hpp"
#include "fquake/rng.hpp"

namespace fquake {

void BacktestConfig::validate() const {
  if (windows < 1) throw std::invalid_argument("window count must be >= 1");
  if (runs < 1) throw std::invalid_argument("run count must be >= 1");
  if (strategies.empty()) throw std::invalid_argument("no strategies selected");
  for (const auto& s : strategies) s.validate();
}

std::size_t BacktestConfig::warmup() const noexcept {
  std::size_t w = 0;
  for (const auto& s : strategies) w = std::max(w, s.warmup());
  return w;
}

namespace {

struct RunCounts {
  // [strategy][window]
  std::vector<std::vector<std::size_t>> wins;
};

}  // namespace

WindowStats run_backtest(const IndexSeries& series, const BacktestConfig& cfg) {
  cfg.validate();
  const auto f = series.values();
  const std::size_t t = f.size();
  const std::size_t window_size = t / cfg.windows;
  const std::size_t first = cfg.warmup();
  if (window_size < 2 || first >= window_size) {
    throw std::invalid_argument(
        "series of " + std::to_string(t) + " days too short for " +
        std::to_string(cfg.windows) + " windows after a warm-up of " +
        std::to_string(first) + " days");
  }
  const std::size_t end = std::min(t - 1, cfg.windows * window_size);

  WindowStats out;
  out.windows = cfg.windows;
  out.window_size = window_size;
  out.runs = cfg.runs;
  out.first_scored_day = first;
  out.scored_days = end - first;
  out.volatility = window_volatility(series, cfg.windows).volatility;

  std::vector<std::size_t> scored(cfg.windows, 0);
  for (std::size_t j = first; j < end; ++j) ++scored[j / window_size];

  // Deterministic predictions do not depend on the run.
  const std::size_t ns = cfg.strategies.size();
  std::vector<std::vector<std::size_t>> fixed_wins(ns);
  for (std::size_t s = 0; s < ns; ++s) {
    const auto& spec = cfg.strategies[s];
    if (spec.kind == StrategyKind::Rnd) continue;
    fixed_wins[s].assign(cfg.windows, 0);
    for (std::size_t j = first; j < end; ++j) {
      const double move = f[j + 1] - f[j];
      if (move == 0.0) continue;
      const Direction realised = move > 0.0 ? Direction::Up : Direction::Down;
      if (predict(spec, f, j) == realised) ++fixed_wins[s][j / window_size];
    }
  }

  std::vector<RunCounts> runs(cfg.runs);
  parallel_for(cfg.runs, cfg.workers, [&](std::size_t r) {
    auto& counts = runs[r];
    counts.wins = fixed_wins;
    // One stream per run, one draw per scored day per random strategy.
    Rng rng(derive_seed(cfg.seed, r));
    for (std::size_t s = 0; s < ns; ++s) {
      if (cfg.strategies[s].kind != StrategyKind::Rnd) continue;
      counts.wins[s].assign(cfg.windows, 0);
      for (std::size_t j = first; j < end; ++j) {
        const Direction guess = predict_rnd(rng);
        const double move = f[j + 1] - f[j];
        if (move == 0.0) continue;
        const Direction realised = move > 0.0 ? Direction::Up : Direction::Down;
        if (guess == realised) ++counts.wins[s][j / window_size];
      }
    }
  });

  const auto nruns = static_cast<double>(cfg.runs);
  for (std::size_t s = 0; s < ns; ++s) {
    StrategyWindows sw;
    sw.spec = cfg.strategies[s];
    sw.win_pct.assign(cfg.windows, 0.0);
    sw.wins.assign(cfg.windows, 0);
    sw.scored.assign(cfg.windows, 0);
    double per_run_std = 0.0;
    std::vector<double> pct(cfg.windows);
    for (const auto& run : runs) {
      for (std::size_t w = 0; w < cfg.windows; ++w) {
        pct[w] = 100.0 * static_cast<double>(run.wins[s][w]) /
                 static_cast<double>(scored[w]);
        sw.win_pct[w] += pct[w] / nruns;
        sw.wins[w] += run.wins[s][w];
        sw.scored[w] += scored[w];
      }
      per_run_std += mean_std(pct).std / nruns;
    }
    const auto stats = mean_std(sw.win_pct);
    sw.mean_win_pct = stats.mean;
    sw.std_win_pct = stats.std;
    sw.std_win_pct_per_run = per_run_std;
    out.strategies.push_back(std::move(sw));
  }
  return out;
}

}  // namespace fquake
