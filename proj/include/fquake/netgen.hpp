#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace fquake {

using NodeId = std::uint32_t;

enum class Topology { SmallWorld2D, ScaleFree };

const char* to_string(Topology t) noexcept;

/// Undirected simple graph with sorted adjacency lists.
class Network {
 public:
  struct Params {
    Topology topology = Topology::SmallWorld2D;
    std::size_t side = 0;        // L, small world only
    double rewire_p = 0.0;       // small world only
    std::size_t links = 0;       // m, scale free only
    std::uint64_t seed = 0;
    std::size_t rewired = 0;     // edges actually rewired (small world)
  };

  Network(std::vector<std::vector<NodeId>> adjacency, Params params);

  std::size_t size() const noexcept { return adjacency_.size(); }
  std::size_t edge_count() const noexcept { return edges_; }
  std::span<const NodeId> neighbors(NodeId v) const noexcept {
    return adjacency_[v];
  }
  std::size_t degree(NodeId v) const noexcept { return adjacency_[v].size(); }
  double mean_degree() const noexcept;
  bool has_edge(NodeId u, NodeId v) const noexcept;
  const Params& params() const noexcept { return params_; }

  /// Edges as (u, v) with u < v, lexicographically sorted.
  std::vector<std::pair<NodeId, NodeId>> edges() const;
  /// degree -> node count
  std::map<std::size_t, std::size_t> degree_histogram() const;

 private:
  std::vector<std::vector<NodeId>> adjacency_;
  Params params_;
  std::size_t edges_ = 0;
};

/// Open-boundary L x L lattice (row-major ids) whose edges are each rewired
/// with probability p: one endpoint, chosen by coin, is detached and the edge
/// reattached from the kept endpoint to a uniform node that is neither itself
/// nor already adjacent. The edge count 2L(L-1) is preserved.
Network build_small_world(std::size_t side, double p, std::uint64_t seed);

/// Preferential attachment: a clique on m+1 nodes, then each new node links
/// to m distinct existing nodes drawn with probability proportional to degree.
Network build_scale_free(std::size_t nodes, std::size_t links, std::uint64_t seed);

/// Nodes with degree > k_min, by degree descending then id ascending.
std::vector<NodeId> hubs(const Network& net, long k_min);

}  // namespace fquake
