#include "fquake/strategy.hpp"

#include <stdexcept>

namespace fquake {

const char* to_string(Direction d) noexcept {
  return d == Direction::Up ? "up" : "down";
}

const char* to_string(StrategyKind k) noexcept {
  switch (k) {
    case StrategyKind::Rnd: return "rnd";
    case StrategyKind::Mom: return "mom";
    case StrategyKind::Rsi: return "rsi";
  }
  return "?";
}

StrategyKind parse_strategy_kind(const std::string& name) {
  if (name == "rnd") return StrategyKind::Rnd;
  if (name == "mom") return StrategyKind::Mom;
  if (name == "rsi") return StrategyKind::Rsi;
  throw std::invalid_argument("unknown strategy '" + name + "'");
}

void StrategySpec::validate() const {
  if (mom_lag < 1) throw std::invalid_argument("momentum lag must be >= 1");
  if (rsi_period < 1) throw std::invalid_argument("RSI period must be >= 1");
  if (rsi_trend < 1) throw std::invalid_argument("RSI trend window must be >= 1");
}

std::size_t StrategySpec::warmup() const noexcept {
  switch (kind) {
    case StrategyKind::Rnd: return 0;
    case StrategyKind::Mom: return mom_lag;
    case StrategyKind::Rsi: return rsi_period + rsi_trend;
  }
  return 0;
}

Direction predict_rnd(Rng& rng) noexcept {
  return rng.coin() ? Direction::Up : Direction::Down;
}

Direction predict_mom(std::span<const double> f, std::size_t j, std::size_t lag) {
  if (lag < 1 || j < lag || j >= f.size()) {
    throw std::out_of_range("momentum at day " + std::to_string(j) +
                            " needs " + std::to_string(lag) + " days of history");
  }
  return f[j] - f[j - lag] >= 0.0 ? Direction::Up : Direction::Down;
}

double rsi_value(std::span<const double> f, std::size_t j, std::size_t period) {
  if (period < 1 || j < period || j >= f.size()) {
    throw std::out_of_range("RSI at day " + std::to_string(j) + " needs " +
                            std::to_string(period) + " returns of history");
  }
  double gains = 0.0;
  double losses = 0.0;
  for (std::size_t k = j - period + 1; k <= j; ++k) {
    const double r = (f[k] - f[k - 1]) / f[k - 1];
    if (r > 0.0) {
      gains += r;
    } else {
      losses -= r;
    }
  }
  if (gains == 0.0 && losses == 0.0) return 50.0;
  if (losses == 0.0) return 100.0;
  if (gains == 0.0) return 0.0;
  const double rs = gains / losses;
  return 100.0 - 100.0 / (1.0 + rs);
}

Direction predict_rsi(std::span<const double> f, std::size_t j,
                      std::size_t period, std::size_t trend) {
  if (trend < 1 || j < period + trend || j >= f.size()) {
    throw std::out_of_range("RSI divergence at day " + std::to_string(j) +
                            " needs " + std::to_string(period + trend) +
                            " days of history");
  }
  const double price_move = f[j] - f[j - trend];
  const Direction price = price_move >= 0.0 ? Direction::Up : Direction::Down;
  const double rsi_move = rsi_value(f, j, period) - rsi_value(f, j - trend, period);
  Direction rsi = price;
  if (rsi_move > 0.0) rsi = Direction::Up;
  if (rsi_move < 0.0) rsi = Direction::Down;
  return rsi == price ? price : opposite(price);
}

Direction predict(const StrategySpec& spec, std::span<const double> f,
                  std::size_t j) {
  switch (spec.kind) {
    case StrategyKind::Mom: return predict_mom(f, j, spec.mom_lag);
    case StrategyKind::Rsi: return predict_rsi(f, j, spec.rsi_period, spec.rsi_trend);
    case StrategyKind::Rnd: break;
  }
  throw std::logic_error("random strategy has no deterministic prediction");
}

}  // namespace fquake
