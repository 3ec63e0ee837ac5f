#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "fquake/netgen.hpp"
#include "fquake/quake.hpp"
#include "fquake/series.hpp"

namespace fquake {

struct NetworkSpec {
  Topology topology = Topology::SmallWorld2D;
  std::size_t side = 40;     // small world: N = side^2
  double rewire_p = 0.02;
  std::size_t nodes = 1600;  // scale free
  std::size_t links = 2;

  Network build(std::uint64_t seed) const;
};

/// Several independent runs of the quake model on one price series.
///
/// Run r uses run_seed = derive_seed(seed, r); its network is generated from
/// derive_seed(run_seed, 0) and its dynamics from derive_seed(run_seed, 1), so
/// two ensembles with the same seed see the same networks and the same drive
/// whatever their trader placement.
struct EnsembleConfig {
  NetworkSpec network;
  QuakeConfig quake;  // quake.seed is overwritten per run
  std::size_t runs = 10;
  std::uint64_t seed = 42;
  unsigned workers = 1;
};

struct EnsembleRun {
  std::uint64_t network_seed = 0;
  std::uint64_t dynamics_seed = 0;
  Network network;
  SimulationResult result;
};

struct EnsembleResult {
  std::vector<EnsembleRun> runs;

  /// |s_j| of every quake of every run, in run order.
  std::vector<double> cumulated_sizes() const;
  std::vector<long> max_size_per_run() const;
  long max_size() const;
  /// Final capitals of every agent of every run, optionally only one kind.
  std::vector<double> capitals() const;
  std::vector<double> capitals(TraderKind kind) const;
};

EnsembleResult run_ensemble(const IndexSeries& series, const EnsembleConfig& cfg);

}  // namespace fquake
