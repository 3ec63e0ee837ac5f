#include "fquake/netgen.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "fquake/rng.hpp"

namespace fquake {

const char* to_string(Topology t) noexcept {
  return t == Topology::SmallWorld2D ? "small-world-2d" : "scale-free";
}

Network::Network(std::vector<std::vector<NodeId>> adjacency, Params params)
    : adjacency_(std::move(adjacency)), params_(params) {
  std::size_t degree_sum = 0;
  for (NodeId v = 0; v < adjacency_.size(); ++v) {
    auto& list = adjacency_[v];
    std::sort(list.begin(), list.end());
    if (std::adjacent_find(list.begin(), list.end()) != list.end()) {
      throw std::invalid_argument("duplicate edge at node " + std::to_string(v));
    }
    for (const NodeId u : list) {
      if (u == v) throw std::invalid_argument("self-loop at node " + std::to_string(v));
      if (u >= adjacency_.size()) throw std::invalid_argument("edge to unknown node");
    }
    degree_sum += list.size();
  }
  for (NodeId v = 0; v < adjacency_.size(); ++v) {
    for (const NodeId u : adjacency_[v]) {
      if (!std::binary_search(adjacency_[u].begin(), adjacency_[u].end(), v)) {
        throw std::invalid_argument("asymmetric adjacency");
      }
    }
  }
  edges_ = degree_sum / 2;
}

double Network::mean_degree() const noexcept {
  return size() == 0 ? 0.0 : 2.0 * static_cast<double>(edges_) / static_cast<double>(size());
}

bool Network::has_edge(NodeId u, NodeId v) const noexcept {
  const auto& list = adjacency_[u];
  return std::binary_search(list.begin(), list.end(), v);
}

std::vector<std::pair<NodeId, NodeId>> Network::edges() const {
  std::vector<std::pair<NodeId, NodeId>> out;
  out.reserve(edges_);
  for (NodeId v = 0; v < adjacency_.size(); ++v) {
    for (const NodeId u : adjacency_[v]) {
      if (v < u) out.emplace_back(v, u);
    }
  }
  return out;
}

std::map<std::size_t, std::size_t> Network::degree_histogram() const {
  std::map<std::size_t, std::size_t> h;
  for (const auto& list : adjacency_) ++h[list.size()];
  return h;
}

namespace {

bool contains(const std::vector<NodeId>& list, NodeId v) {
  return std::find(list.begin(), list.end(), v) != list.end();
}

void erase_value(std::vector<NodeId>& list, NodeId v) {
  list.erase(std::find(list.begin(), list.end(), v));
}

}  // namespace

Network build_small_world(std::size_t side, double p, std::uint64_t seed) {
  if (side < 2) throw std::invalid_argument("lattice side must be >= 2");
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument("rewiring probability must lie in [0, 1]");
  }
  const std::size_t n = side * side;
  std::vector<std::vector<NodeId>> adj(n);
  std::vector<std::pair<NodeId, NodeId>> lattice;
  lattice.reserve(2 * side * (side - 1));
  for (std::size_t r = 0; r < side; ++r) {
    for (std::size_t c = 0; c < side; ++c) {
      const auto v = static_cast<NodeId>(r * side + c);
      if (c + 1 < side) lattice.emplace_back(v, v + 1);
      if (r + 1 < side) lattice.emplace_back(v, static_cast<NodeId>(v + side));
    }
  }
  for (const auto& [u, v] : lattice) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }

  Rng rng(seed);
  std::size_t rewired = 0;
  for (const auto& [u, v] : lattice) {
    if (!rng.bernoulli(p)) continue;
    const bool keep_u = rng.coin();
    const NodeId anchor = keep_u ? u : v;
    const NodeId dropped = keep_u ? v : u;
    // Edge may have been touched by an earlier rewiring of a neighbour edge.
    if (!contains(adj[anchor], dropped)) continue;
    // Candidates: not the anchor, not adjacent to it (the dropped end is
    // adjacent, so it is excluded too).
    if (adj[anchor].size() + 1 >= n) continue;
    NodeId target = 0;
    do {
      target = static_cast<NodeId>(rng.below(n));
    } while (target == anchor || contains(adj[anchor], target));
    erase_value(adj[anchor], dropped);
    erase_value(adj[dropped], anchor);
    adj[anchor].push_back(target);
    adj[target].push_back(anchor);
    ++rewired;
  }

  Network::Params params;
  params.topology = Topology::SmallWorld2D;
  params.side = side;
  params.rewire_p = p;
  params.seed = seed;
  params.rewired = rewired;
  return Network(std::move(adj), params);
}

Network build_scale_free(std::size_t nodes, std::size_t links, std::uint64_t seed) {
  if (links < 1 || nodes <= links + 1) {
    throw std::invalid_argument("scale-free network needs N > m + 1 >= 2");
  }
  std::vector<std::vector<NodeId>> adj(nodes);
  // Every edge endpoint appears once; a uniform pick from this list is a
  // degree-proportional pick of a node.
  std::vector<NodeId> endpoints;
  endpoints.reserve(2 * (links * (links + 1) / 2 + links * (nodes - links - 1)));
  for (NodeId u = 0; u <= links; ++u) {
    for (NodeId v = u + 1; v <= links; ++v) {
      adj[u].push_back(v);
      adj[v].push_back(u);
      endpoints.push_back(u);
      endpoints.push_back(v);
    }
  }

  Rng rng(seed);
  std::vector<NodeId> targets;
  targets.reserve(links);
  for (auto v = static_cast<NodeId>(links + 1); v < nodes; ++v) {
    targets.clear();
    const std::size_t pool = endpoints.size();  // degrees before this arrival
    while (targets.size() < links) {
      const NodeId pick = endpoints[rng.below(pool)];
      if (!contains(targets, pick)) targets.push_back(pick);
    }
    for (const NodeId u : targets) {
      adj[u].push_back(v);
      adj[v].push_back(u);
      endpoints.push_back(u);
      endpoints.push_back(v);
    }
  }

  Network::Params params;
  params.topology = Topology::ScaleFree;
  params.links = links;
  params.seed = seed;
  return Network(std::move(adj), params);
}

std::vector<NodeId> hubs(const Network& net, long k_min) {
  std::vector<NodeId> out;
  for (NodeId v = 0; v < net.size(); ++v) {
    if (static_cast<long>(net.degree(v)) > k_min) out.push_back(v);
  }
  std::stable_sort(out.begin(), out.end(), [&](NodeId a, NodeId b) {
    return net.degree(a) > net.degree(b);
  });
  return out;
}

}  // namespace fquake
