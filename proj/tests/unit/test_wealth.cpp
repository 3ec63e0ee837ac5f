#include <vector>

#include "doctest.h"
#include "fquake/rng.hpp"
#include "fquake/wealth.hpp"

using namespace fquake;

TEST_SUITE("wealth") {

TEST_CASE("stake rule") {
  CapitalLedger ledger(3);
  CHECK(ledger.stake(0) == 0.0);
  ledger.settle(1, BetOutcome::Won);
  CHECK(ledger.stake(1) == 500.0);
  ledger.settle(2, BetOutcome::Lost);
  CHECK(ledger.stake(2) == 100.0);
  CHECK(ledger.capital(1) == 1000.0);
  CHECK(ledger.capital(2) == 1000.0);
}

TEST_CASE("two-bet sequences") {
  auto run = [](BetOutcome a, BetOutcome b) {
    CapitalLedger ledger(1);
    ledger.settle(0, a);
    const double after_first = ledger.capital(0);
    ledger.settle(0, b);
    return std::pair{after_first, ledger.capital(0)};
  };
  CHECK(run(BetOutcome::Won, BetOutcome::Won) == std::pair{1000.0, 1500.0});
  CHECK(run(BetOutcome::Won, BetOutcome::Lost) == std::pair{1000.0, 500.0});
  CHECK(run(BetOutcome::Lost, BetOutcome::Lost) == std::pair{1000.0, 900.0});
  CHECK(run(BetOutcome::Lost, BetOutcome::Won) == std::pair{1000.0, 1100.0});
}

TEST_CASE("settlement bookkeeping") {
  CapitalLedger ledger(2, true);
  CHECK(ledger.settle(0, BetOutcome::Lost) == 0.0);
  CHECK(ledger.settle(0, BetOutcome::Won) == 100.0);
  CHECK(ledger.bets(0) == 2);
  CHECK(ledger.bets(1) == 0);
  CHECK(ledger.last_outcome(0) == BetOutcome::Won);
  CHECK(ledger.last_outcome(1) == BetOutcome::None);
  REQUIRE(ledger.history().size() == 2);
  CHECK(ledger.history()[1].capital_before == 1000.0);
  CHECK(ledger.history()[1].stake == 100.0);
  CHECK(ledger.history()[1].previous == BetOutcome::Lost);
  CHECK_THROWS(ledger.settle(1, BetOutcome::None));
}

TEST_CASE("capital stays positive and is replayable") {
  Rng rng(9);
  CapitalLedger ledger(50, true);
  for (int i = 0; i < 20000; ++i) {
    const auto agent = static_cast<std::size_t>(rng.below(50));
    ledger.settle(agent, rng.coin() ? BetOutcome::Won : BetOutcome::Lost);
  }
  for (const double c : ledger.capitals()) CHECK(c > 0.0);

  // Replay the history from scratch with the written rule.
  std::vector<double> cap(50, 1000.0);
  std::vector<BetOutcome> last(50, BetOutcome::None);
  for (const auto& s : ledger.history()) {
    double stake = 0.0;
    if (last[s.agent] == BetOutcome::Won) stake = 0.5 * cap[s.agent];
    if (last[s.agent] == BetOutcome::Lost) stake = 0.1 * cap[s.agent];
    cap[s.agent] += s.outcome == BetOutcome::Won ? stake : -stake;
    last[s.agent] = s.outcome;
  }
  for (std::size_t i = 0; i < 50; ++i) CHECK(cap[i] == ledger.capital(i));

  const auto w = wealth_summary(ledger.capitals());
  CHECK(w.min <= w.mean);
  CHECK(w.mean <= w.max);
  CHECK(w.count == 50);
}

TEST_CASE("summary") {
  const CapitalLedger idle(10);
  const auto w = wealth_summary(idle.capitals());
  CHECK(w.mean == 1000.0);
  CHECK(w.fraction_below_initial == 0.0);

  const std::vector<double> caps{500.0, 1000.0, 1500.0, 20000.0};
  const auto s = wealth_summary(caps);
  CHECK(s.mean == 5750.0);
  CHECK(s.min == 500.0);
  CHECK(s.max == 20000.0);
  CHECK(s.fraction_below_initial == 0.25);
  CHECK(s.fraction_above_10000 == 0.25);
  CHECK(wealth_summary({}).count == 0);
}

}  // TEST_SUITE
