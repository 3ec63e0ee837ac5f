#include "fquake/quake.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <stdexcept>
#include <string>

namespace fquake {

const char* to_string(TraderKind k) noexcept {
  return k == TraderKind::Rsi ? "rsi" : "rnd";
}

const char* to_string(RandomPlacement p) noexcept {
  switch (p) {
    case RandomPlacement::None: return "none";
    case RandomPlacement::UniformFraction: return "uniform";
    case RandomPlacement::Hubs: return "hubs";
  }
  return "?";
}

void QuakeConfig::validate() const {
  if (!(alpha >= 0.0 && alpha < 1.0)) {
    throw std::invalid_argument("alpha must lie in [0, 1)");
  }
  if (!(threshold > 0.0) || !std::isfinite(threshold)) {
    throw std::invalid_argument("information threshold must be positive");
  }
  if (!(rnd_fraction >= 0.0 && rnd_fraction <= 1.0)) {
    throw std::invalid_argument("random-trader fraction must lie in [0, 1]");
  }
  if (rsi.kind != StrategyKind::Rsi) {
    throw std::invalid_argument("herding traders use the RSI strategy");
  }
  rsi.validate();
}

void init_information(std::span<double> info, double threshold, Rng& rng) {
  for (double& x : info) x = threshold * rng.uniform_open();
}

bool drive(std::span<double> info, double threshold, Rng& rng) {
  if (info.empty()) return false;
  const double top = *std::max_element(info.begin(), info.end());
  const double width = std::max(0.0, threshold - top);
  bool active = false;
  for (double& x : info) {
    x += width * rng.uniform_closed();
    active = active || x >= threshold;
  }
  return active;
}

Avalanche propagate_avalanche(std::span<double> info,
                              std::span<const TraderKind> kinds,
                              const Network& net, double alpha,
                              double threshold) {
  Avalanche out;
  std::deque<NodeId> queue;
  for (NodeId v = 0; v < info.size(); ++v) {
    out.audit.info_at_start += info[v];
    if (kinds[v] == TraderKind::Rsi && info[v] >= threshold) queue.push_back(v);
  }
  if (queue.empty()) {
    throw std::logic_error("avalanche started without an active herding agent");
  }

  while (!queue.empty()) {
    const NodeId k = queue.front();
    queue.pop_front();
    const double load = info[k];
    info[k] = 0.0;
    ++out.topples;
    out.members.push_back(k);
    out.audit.removed += load;

    const auto nbrs = net.neighbors(k);
    if (nbrs.empty()) {
      out.audit.dissipated += load;
      continue;
    }
    const double share = alpha * load / static_cast<double>(nbrs.size());
    out.audit.dissipated += (1.0 - alpha) * load;
    for (const NodeId u : nbrs) {
      if (kinds[u] == TraderKind::Rnd) {
        out.audit.to_random += share;
        continue;
      }
      const double before = info[u];
      info[u] += share;
      out.audit.delivered += share;
      if (before < threshold && info[u] >= threshold) queue.push_back(u);
    }
  }
  std::sort(out.members.begin(), out.members.end());
  out.members.erase(std::unique(out.members.begin(), out.members.end()),
                    out.members.end());
  return out;
}

BetOutcome resolve_bet(Direction prediction, std::span<const double> f,
                       std::size_t day) {
  if (day < 1 || day >= f.size()) {
    throw std::out_of_range("no price move for day " + std::to_string(day));
  }
  const double move = f[day] - f[day - 1];
  if (move == 0.0) return BetOutcome::Lost;
  const Direction realised = move > 0.0 ? Direction::Up : Direction::Down;
  return realised == prediction ? BetOutcome::Won : BetOutcome::Lost;
}

std::vector<TraderKind> assign_kinds(const Network& net, const QuakeConfig& cfg,
                                     Rng& rng) {
  std::vector<TraderKind> kinds(net.size(), TraderKind::Rsi);
  switch (cfg.placement) {
    case RandomPlacement::None:
      break;
    case RandomPlacement::UniformFraction: {
      const auto count = static_cast<std::size_t>(
          std::llround(cfg.rnd_fraction * static_cast<double>(net.size())));
      std::vector<NodeId> ids(net.size());
      std::iota(ids.begin(), ids.end(), NodeId{0});
      for (std::size_t i = 0; i < count; ++i) {
        const auto j = i + static_cast<std::size_t>(rng.below(ids.size() - i));
        std::swap(ids[i], ids[j]);
        kinds[ids[i]] = TraderKind::Rnd;
      }
      break;
    }
    case RandomPlacement::Hubs:
      for (const NodeId v : hubs(net, cfg.hub_k_min)) kinds[v] = TraderKind::Rnd;
      break;
  }
  return kinds;
}

QuakeSimulation::QuakeSimulation(const Network& net, const IndexSeries& series,
                                 QuakeConfig cfg)
    : net_(net),
      series_(series),
      cfg_(cfg),
      rng_(cfg.seed),
      ledger_(net.size(), cfg.record_settlements) {
  cfg_.validate();
  // The prediction for day j may only use closes up to j - 1.
  first_day_ = cfg_.rsi.warmup() + 1;
  if (first_day_ >= series_.size()) {
    throw std::invalid_argument("series of " + std::to_string(series_.size()) +
                                " days is shorter than the RSI warm-up");
  }
  kinds_ = assign_kinds(net_, cfg_, rng_);
  has_herders_ = std::find(kinds_.begin(), kinds_.end(), TraderKind::Rsi) != kinds_.end();
  if (!has_herders_ && cfg_.max_steps == 0) {
    throw std::invalid_argument(
        "no herding traders: a step limit is required to end the run");
  }
  info_.resize(net_.size());
  init_information(info_, cfg_.threshold, rng_);
  day_ = first_day_ - 1;
}

bool QuakeSimulation::advance_day() {
  if (day_ + 1 < series_.size()) {
    ++day_;
    return true;
  }
  if (!cfg_.wrap_series) return false;
  day_ = first_day_;
  return true;
}

bool QuakeSimulation::step() {
  if (finished_) return false;
  if (cfg_.max_steps != 0 && steps_ >= cfg_.max_steps) {
    finished_ = true;
    return false;
  }
  ++steps_;
  if (!drive(info_, cfg_.threshold, rng_)) return true;

  const auto f = series_.values();
  bool herding = false;
  for (NodeId v = 0; v < info_.size(); ++v) {
    if (info_[v] < cfg_.threshold) continue;
    if (kinds_[v] == TraderKind::Rsi) {
      herding = true;
      continue;
    }
    const Direction guess = predict_rnd(rng_);
    ledger_.settle(v, resolve_bet(guess, f, day_));
    info_[v] = 0.0;
    ++random_bets_;
  }
  if (!herding) return true;

  if (!advance_day()) {
    finished_ = true;
    return false;
  }
  const std::size_t ordinal = quakes_.size();
  const bool snapshot =
      std::find(cfg_.snapshot_quakes.begin(), cfg_.snapshot_quakes.end(),
                ordinal) != cfg_.snapshot_quakes.end();
  if (snapshot) snapshots_.push_back({ordinal, info_, {}});
  auto avalanche = propagate_avalanche(info_, kinds_, net_, cfg_.alpha, cfg_.threshold);
  QuakeRecord rec;
  rec.ordinal = ordinal;
  if (snapshot) snapshots_.back().members = avalanche.members;
  rec.day = day_;
  rec.prediction = predict_rsi(f, day_ - 1, cfg_.rsi.rsi_period, cfg_.rsi.rsi_trend);
  const BetOutcome outcome = resolve_bet(rec.prediction, f, day_);
  for (const NodeId v : avalanche.members) ledger_.settle(v, outcome);
  const auto size = static_cast<long>(avalanche.members.size());
  rec.size_signed = outcome == BetOutcome::Won ? size : -size;
  rec.members = std::move(avalanche.members);
  rec.topples = avalanche.topples;
  rec.audit = avalanche.audit;
  quakes_.push_back(std::move(rec));

  if (cfg_.max_quakes != 0 && quakes_.size() >= cfg_.max_quakes) {
    finished_ = true;
    return false;
  }
  return true;
}

void QuakeSimulation::run() {
  while (step()) {
  }
}

SimulationResult QuakeSimulation::take_result() {
  SimulationResult out;
  out.quakes = std::move(quakes_);
  out.kinds = kinds_;
  out.ledger = ledger_;
  out.final_information = info_;
  out.snapshots = std::move(snapshots_);
  out.steps = steps_;
  out.random_bets = random_bets_;
  out.first_day = first_day_;
  return out;
}

SimulationResult run_simulation(const Network& net, const IndexSeries& series,
                                const QuakeConfig& cfg) {
  QuakeSimulation sim(net, series, cfg);
  sim.run();
  return sim.take_result();
}

}  // namespace fquake
