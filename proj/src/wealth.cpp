#include "fquake/wealth.hpp"

#include <algorithm>
#include <stdexcept>

namespace fquake {

CapitalLedger::CapitalLedger(std::size_t agents, bool record_history)
    : capital_(agents, kInitialCapital),
      bets_(agents, 0),
      last_(agents, BetOutcome::None),
      record_history_(record_history) {}

double CapitalLedger::stake(std::size_t agent) const noexcept {
  switch (last_[agent]) {
    case BetOutcome::None: return 0.0;
    case BetOutcome::Won: return kStakeAfterWin * capital_[agent];
    case BetOutcome::Lost: return kStakeAfterLoss * capital_[agent];
  }
  return 0.0;
}

double CapitalLedger::settle(std::size_t agent, BetOutcome outcome) {
  if (outcome == BetOutcome::None) {
    throw std::invalid_argument("a settled bet is either won or lost");
  }
  const double before = capital_[agent];
  const double delta = stake(agent);
  if (record_history_) {
    history_.push_back({static_cast<std::uint32_t>(agent), before, delta,
                        outcome, last_[agent]});
  }
  capital_[agent] = outcome == BetOutcome::Won ? before + delta : before - delta;
  last_[agent] = outcome;
  ++bets_[agent];
  return delta;
}

WealthSummary wealth_summary(std::span<const double> capitals) {
  WealthSummary s;
  s.count = capitals.size();
  if (capitals.empty()) return s;
  double sum = 0.0;
  std::size_t below = 0;
  std::size_t above = 0;
  s.min = capitals.front();
  s.max = capitals.front();
  for (const double c : capitals) {
    sum += c;
    if (c < CapitalLedger::kInitialCapital) ++below;
    if (c > 10000.0) ++above;
    s.min = std::min(s.min, c);
    s.max = std::max(s.max, c);
  }
  const auto n = static_cast<double>(capitals.size());
  s.mean = sum / n;
  s.fraction_below_initial = static_cast<double>(below) / n;
  s.fraction_above_10000 = static_cast<double>(above) / n;
  return s;
}

}  // namespace fquake
