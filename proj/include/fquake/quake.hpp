#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "fquake/netgen.hpp"
#include "fquake/rng.hpp"
#include "fquake/series.hpp"
#include "fquake/strategy.hpp"
#include "fquake/wealth.hpp"

namespace fquake {

enum class TraderKind : std::uint8_t { Rsi, Rnd };

const char* to_string(TraderKind k) noexcept;

enum class RandomPlacement { None, UniformFraction, Hubs };

const char* to_string(RandomPlacement p) noexcept;

struct QuakeConfig {
  double alpha = 0.84;       // fraction of a toppler's information passed on
  double threshold = 1.0;    // I_th
  RandomPlacement placement = RandomPlacement::None;
  double rnd_fraction = 0.0; // P_RND for UniformFraction
  long hub_k_min = 50;       // degree threshold for Hubs
  StrategySpec rsi{StrategyKind::Rsi};
  std::size_t max_quakes = 0;  // 0: run until the series is exhausted
  std::size_t max_steps = 0;   // 0: no limit on drive steps
  bool wrap_series = false;    // restart at the first usable day instead of stopping
  std::uint64_t seed = 0;
  bool record_settlements = false;
  /// Quake ordinals whose information field (before relaxation) is kept.
  std::vector<std::size_t> snapshot_quakes;

  void validate() const;
};

/// Information bookkeeping of one avalanche.
struct AvalancheAudit {
  double info_at_start = 0.0;  // total information of all agents
  double removed = 0.0;        // sum of I_k over topples
  double delivered = 0.0;      // received by herding neighbours
  double dissipated = 0.0;     // (1 - alpha) * I_k, plus isolated topplers' I_k
  double to_random = 0.0;      // shares addressed to random traders
};

struct Avalanche {
  std::vector<NodeId> members;  // distinct herding agents that toppled, sorted
  std::size_t topples = 0;
  AvalancheAudit audit;
};

struct QuakeRecord {
  std::size_t ordinal = 0;
  std::size_t day = 0;
  Direction prediction = Direction::Up;
  std::vector<NodeId> members;
  long size_signed = 0;
  std::size_t topples = 0;
  AvalancheAudit audit;
};

/// I_i uniform in (0, threshold), independently per agent.
void init_information(std::span<double> info, double threshold, Rng& rng);

/// One external drive step: every agent gains an independent uniform amount in
/// [0, threshold - max_i I_i]. Returns true when some agent reached threshold.
bool drive(std::span<double> info, double threshold, Rng& rng);

/// Relaxes every herding agent at or above threshold. Active agents are
/// processed first-in first-out; a topple sets I_k to 0 and adds
/// alpha * I_k / degree(k) to each neighbour. Shares addressed to random
/// traders are dissipated, and random traders are never enqueued.
Avalanche propagate_avalanche(std::span<double> info,
                              std::span<const TraderKind> kinds,
                              const Network& net, double alpha,
                              double threshold);

/// Won when the prediction matches the sign of F_day - F_{day-1}; a flat day
/// is a loss.
BetOutcome resolve_bet(Direction prediction, std::span<const double> f,
                       std::size_t day);

/// Trader kinds for the placement rule in cfg. UniformFraction picks exactly
/// round(P_RND * N) agents without replacement.
std::vector<TraderKind> assign_kinds(const Network& net, const QuakeConfig& cfg,
                                     Rng& rng);

struct QuakeSnapshot {
  std::size_t ordinal = 0;
  std::vector<double> information;  // just before the avalanche relaxes
  std::vector<NodeId> members;
};

struct SimulationResult {
  std::vector<QuakeRecord> quakes;
  std::vector<TraderKind> kinds;
  CapitalLedger ledger{0};
  std::vector<double> final_information;
  std::vector<QuakeSnapshot> snapshots;
  std::size_t steps = 0;
  std::size_t random_bets = 0;
  std::size_t first_day = 0;
};

/// The Financial Quakes dynamics on a fixed network and price series.
///
/// Each step drives every agent. Random traders that reach threshold bet on
/// their own with a coin flip against the current day and reset to zero.
/// If any herding agent reached threshold the day index advances by one and
/// an avalanche is relaxed; all of its members share the RSI prediction for
/// that day (computed from closes up to the previous day) and settle the same
/// outcome in the capital ledger.
class QuakeSimulation {
 public:
  QuakeSimulation(const Network& net, const IndexSeries& series,
                  QuakeConfig cfg);

  /// Runs one drive step. Returns false once the run is finished.
  bool step();
  void run();
  bool finished() const noexcept { return finished_; }

  const std::vector<QuakeRecord>& quakes() const noexcept { return quakes_; }
  const std::vector<QuakeSnapshot>& snapshots() const noexcept { return snapshots_; }
  std::span<const double> information() const noexcept { return info_; }
  std::span<const TraderKind> kinds() const noexcept { return kinds_; }
  const CapitalLedger& ledger() const noexcept { return ledger_; }
  std::size_t steps() const noexcept { return steps_; }
  std::size_t first_day() const noexcept { return first_day_; }

  SimulationResult take_result();

 private:
  bool advance_day();

  const Network& net_;
  const IndexSeries& series_;
  QuakeConfig cfg_;
  Rng rng_;
  std::vector<TraderKind> kinds_;
  std::vector<double> info_;
  CapitalLedger ledger_;
  std::vector<QuakeRecord> quakes_;
  std::vector<QuakeSnapshot> snapshots_;
  std::size_t first_day_ = 0;
  std::size_t day_ = 0;
  std::size_t steps_ = 0;
  std::size_t random_bets_ = 0;
  bool has_herders_ = false;
  bool finished_ = false;
};

SimulationResult run_simulation(const Network& net, const IndexSeries& series,
                                const QuakeConfig& cfg);

}  // namespace fquake
