#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace fquake {

enum class BetOutcome : std::uint8_t { None, Won, Lost };

/// Per-agent capital under the two-rate staking rule: an agent's first bet
/// moves nothing, after a win the next stake is half the current capital,
/// after a loss it is a tenth.
class CapitalLedger {
 public:
  static constexpr double kInitialCapital = 1000.0;
  static constexpr double kStakeAfterWin = 0.5;
  static constexpr double kStakeAfterLoss = 0.1;

  struct Settlement {
    std::uint32_t agent;
    double capital_before;
    double stake;
    BetOutcome outcome;
    BetOutcome previous;
  };

  explicit CapitalLedger(std::size_t agents, bool record_history = false);

  std::size_t size() const noexcept { return capital_.size(); }
  double capital(std::size_t agent) const noexcept { return capital_[agent]; }
  std::size_t bets(std::size_t agent) const noexcept { return bets_[agent]; }
  BetOutcome last_outcome(std::size_t agent) const noexcept { return last_[agent]; }
  std::span<const double> capitals() const noexcept { return capital_; }
  const std::vector<Settlement>& history() const noexcept { return history_; }

  double stake(std::size_t agent) const noexcept;
  /// Applies the stake for this bet and records the outcome. Returns the stake.
  double settle(std::size_t agent, BetOutcome outcome);

 private:
  std::vector<double> capital_;
  std::vector<std::uint32_t> bets_;
  std::vector<BetOutcome> last_;
  bool record_history_;
  std::vector<Settlement> history_;
};

struct WealthSummary {
  std::size_t count = 0;
  double fraction_below_initial = 0.0;
  double mean = 0.0;
  double min = 0.0;
  double max = 0.0;
  double fraction_above_10000 = 0.0;
};

/// Statistics over the given capitals (empty input gives a zero summary).
WealthSummary wealth_summary(std::span<const double> capitals);

}  // namespace fquake
