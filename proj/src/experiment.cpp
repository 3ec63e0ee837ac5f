#include "fquake/experiment.hpp"

#include <algorithm>
#include <cstdlib>
#include <optional>

#include "fquake/parallel.hpp"
#include "fquake/rng.hpp"

namespace fquake {

Network NetworkSpec::build(std::uint64_t seed) const {
  if (topology == Topology::SmallWorld2D) return build_small_world(side, rewire_p, seed);
  return build_scale_free(nodes, links, seed);
}

EnsembleResult run_ensemble(const IndexSeries& series, const EnsembleConfig& cfg) {
  cfg.quake.validate();
  std::vector<std::optional<EnsembleRun>> slots(cfg.runs);
  parallel_for(cfg.runs, cfg.workers, [&](std::size_t r) {
    const std::uint64_t run_seed = derive_seed(cfg.seed, r);
    const std::uint64_t network_seed = derive_seed(run_seed, 0);
    const std::uint64_t dynamics_seed = derive_seed(run_seed, 1);
    Network net = cfg.network.build(network_seed);
    QuakeConfig qc = cfg.quake;
    qc.seed = dynamics_seed;
    auto result = run_simulation(net, series, qc);
    slots[r] = EnsembleRun{network_seed, dynamics_seed, std::move(net), std::move(result)};
  });
  EnsembleResult out;
  out.runs.reserve(cfg.runs);
  for (auto& slot : slots) out.runs.push_back(std::move(*slot));
  return out;
}

std::vector<double> EnsembleResult::cumulated_sizes() const {
  std::vector<double> out;
  for (const auto& run : runs) {
    for (const auto& q : run.result.quakes) {
      out.push_back(static_cast<double>(std::labs(q.size_signed)));
    }
  }
  return out;
}

std::vector<long> EnsembleResult::max_size_per_run() const {
  std::vector<long> out;
  for (const auto& run : runs) {
    long m = 0;
    for (const auto& q : run.result.quakes) m = std::max(m, std::labs(q.size_signed));
    out.push_back(m);
  }
  return out;
}

long EnsembleResult::max_size() const {
  const auto per_run = max_size_per_run();
  return per_run.empty() ? 0 : *std::max_element(per_run.begin(), per_run.end());
}

std::vector<double> EnsembleResult::capitals() const {
  std::vector<double> out;
  for (const auto& run : runs) {
    const auto c = run.result.ledger.capitals();
    out.insert(out.end(), c.begin(), c.end());
  }
  return out;
}

std::vector<double> EnsembleResult::capitals(TraderKind kind) const {
  std::vector<double> out;
  for (const auto& run : runs) {
    for (std::size_t i = 0; i < run.result.kinds.size(); ++i) {
      if (run.result.kinds[i] == kind) out.push_back(run.result.ledger.capital(i));
    }
  }
  return out;
}

}  // namespace fquake
