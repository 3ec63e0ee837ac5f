#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "fquake/series.hpp"
#include "fquake/strategy.hpp"

namespace fquake {

struct BacktestConfig {
  std::size_t windows = 3;  // N_w
  std::size_t runs = 10;
  std::vector<StrategySpec> strategies = {
      {StrategyKind::Rnd}, {StrategyKind::Mom}, {StrategyKind::Rsi}};
  std::uint64_t seed = 42;
  unsigned workers = 1;

  void validate() const;
  /// Longest lookback over the enabled strategies; the first scored day.
  std::size_t warmup() const noexcept;
};

struct StrategyWindows {
  StrategySpec spec;
  /// Win percentage per window, averaged over runs.
  std::vector<double> win_pct;
  /// Mean and population std over windows of win_pct.
  double mean_win_pct = 0.0;
  double std_win_pct = 0.0;
  /// Std over windows computed inside each run, then averaged over runs.
  double std_win_pct_per_run = 0.0;
  /// Scored days and wins per window, summed over runs.
  std::vector<std::size_t> scored;
  std::vector<std::size_t> wins;
};

struct WindowStats {
  std::size_t windows = 0;
  std::size_t window_size = 0;
  std::size_t runs = 0;
  std::size_t first_scored_day = 0;
  std::size_t scored_days = 0;  // per run, over all windows
  std::vector<double> volatility;
  std::vector<StrategyWindows> strategies;
};

/// Walks every strategy through the series. Day j (from the global warm-up to
/// T-2) is scored when it falls inside one of the N_w windows of
/// floor(T/N_w) days; the prediction for F_{j+1} - F_j wins when it matches
/// the realised sign, and a flat day is a loss for either direction.
WindowStats run_backtest(const IndexSeries& series, const BacktestConfig& cfg);

}  // namespace fquake
