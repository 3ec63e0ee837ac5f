#pragma once

#include <cstddef>
#include <span>
#include <string>

#include "fquake/rng.hpp"
#include "fquake/series.hpp"

namespace fquake {

enum class Direction { Up, Down };

constexpr Direction opposite(Direction d) noexcept {
  return d == Direction::Up ? Direction::Down : Direction::Up;
}

const char* to_string(Direction d) noexcept;

enum class StrategyKind { Rnd, Mom, Rsi };

const char* to_string(StrategyKind k) noexcept;
StrategyKind parse_strategy_kind(const std::string& name);

struct StrategySpec {
  StrategyKind kind = StrategyKind::Rnd;
  std::size_t mom_lag = 7;      // days between the compared closes
  std::size_t rsi_period = 14;  // returns summed into RS
  std::size_t rsi_trend = 14;   // lookback for the price/RSI trend comparison

  void validate() const;
  /// Earliest day index (0-based) at which predict() has enough history.
  std::size_t warmup() const noexcept;
};

// All day indices are 0-based positions in the series.

Direction predict_rnd(Rng& rng) noexcept;

/// Up iff F_j - F_{j - lag} >= 0 (a flat momentum counts as Up).
Direction predict_mom(std::span<const double> f, std::size_t j, std::size_t lag);

/// 100 - 100 / (1 + RS) with RS = (sum of gains) / |sum of losses| over the
/// `period` returns ending at day j. No losses gives 100, no gains gives 0 and
/// a flat window gives 50.
double rsi_value(std::span<const double> f, std::size_t j, std::size_t period);

/// Divergence rule. Price trend is the sign of F_j - F_{j-T} (flat: Up); RSI
/// trend is the sign of RSI(j) - RSI(j-T) (flat: agrees with price). When the
/// two trends disagree the price trend is predicted to reverse, otherwise to
/// continue.
Direction predict_rsi(std::span<const double> f, std::size_t j,
                      std::size_t period, std::size_t trend);

/// Prediction for the move F_{j+1} - F_j by a deterministic strategy (MOM or
/// RSI). RND strategies go through predict_rnd instead.
Direction predict(const StrategySpec& spec, std::span<const double> f,
                  std::size_t j);

}  // namespace fquake
