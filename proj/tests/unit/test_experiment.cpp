#include <algorithm>

#include "doctest.h"
#include "fquake/experiment.hpp"
#include "fquake/report.hpp"

using namespace fquake;

TEST_SUITE("experiment") {

TEST_CASE("ensemble seeding and aggregation") {
  const auto series = synth_series(SynthModel::Gbm, 300, {}, 2);
  EnsembleConfig cfg;
  cfg.network.side = 15;
  cfg.runs = 3;
  cfg.seed = 99;
  cfg.quake.placement = RandomPlacement::UniformFraction;
  cfg.quake.rnd_fraction = 0.1;
  const auto ens = run_ensemble(series, cfg);
  REQUIRE(ens.runs.size() == 3);
  std::size_t quakes = 0;
  for (std::size_t r = 0; r < 3; ++r) {
    const auto run_seed = derive_seed(99, r);
    CHECK(ens.runs[r].network_seed == derive_seed(run_seed, 0));
    CHECK(ens.runs[r].dynamics_seed == derive_seed(run_seed, 1));
    CHECK(ens.runs[r].network.edges() == build_small_world(15, 0.02, derive_seed(run_seed, 0)).edges());
    quakes += ens.runs[r].result.quakes.size();
  }
  const auto sizes = ens.cumulated_sizes();
  CHECK(sizes.size() == quakes);
  CHECK(ens.max_size() == static_cast<long>(*std::max_element(sizes.begin(), sizes.end())));
  CHECK(ens.capitals().size() == 3 * 225);
  CHECK(ens.capitals(TraderKind::Rnd).size() == 3 * 23);
  CHECK(ens.capitals(TraderKind::Rsi).size() == 3 * (225 - 23));

  auto parallel = cfg;
  parallel.workers = 3;
  const auto again = run_ensemble(series, parallel);
  CHECK(again.cumulated_sizes() == sizes);
  CHECK(again.capitals() == ens.capitals());
}

TEST_CASE("placement does not change the network of a run") {
  const auto series = synth_series(SynthModel::Gbm, 200, {}, 2);
  EnsembleConfig a;
  a.network.topology = Topology::ScaleFree;
  a.network.nodes = 400;
  a.quake.alpha = 0.95;
  a.runs = 2;
  auto b = a;
  b.quake.placement = RandomPlacement::Hubs;
  b.quake.hub_k_min = 20;
  const auto x = run_ensemble(series, a);
  const auto y = run_ensemble(series, b);
  for (std::size_t r = 0; r < 2; ++r) CHECK(x.runs[r].network.edges() == y.runs[r].network.edges());
}

TEST_CASE("csv tables") {
  CsvTable t({"a", "b", "c"});
  t.row(1, 0.5, "x").row(std::size_t{2}, 1e-20, std::string("y"));
  CHECK(t.str() == "a,b,c\n1,0.5,x\n2,1e-20,y\n");
  CHECK_THROWS(t.row(1, 2));

  Histogram h;
  h.edges = {1.0, 4.0};
  h.density = {0.25};
  h.counts = {3};
  h.samples = 3;
  CHECK(histogram_table(h).str() == "bin_center,density\n2,0.25\n");
}

TEST_CASE("output sets") {
  OutputSet out;
  out.add("b.txt", std::string("2"));
  out.add("a/x.txt", std::string("1"));
  CHECK_THROWS(out.add("b.txt", std::string("3")));
  CHECK(out.names() == std::vector<std::string>{"a/x.txt", "b.txt"});
  const auto dir = std::filesystem::temp_directory_path() / "fquake_outputset";
  std::filesystem::remove_all(dir);
  const auto written = out.write(dir);
  CHECK(written.size() == 2);
  CHECK(std::filesystem::file_size(dir / "a/x.txt") == 1);
  CHECK(file_digest(dir / "b.txt") == file_digest(dir / "b.txt"));
  CHECK(file_digest(dir / "b.txt") != file_digest(dir / "a/x.txt"));
}

}  // TEST_SUITE
