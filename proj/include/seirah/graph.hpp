#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "seirah/rng.hpp"

namespace seirah {

using NodeId = std::uint32_t;

/// (N, k, p) of a Newman-Watts small world.
struct NetworkParams {
  std::uint32_t n = 0;
  std::uint32_t k = 0;
  double p = 0.0;

  /// Throws ParameterError naming the violated bound.
  void validate() const;
};

struct Edge {
  NodeId u;
  NodeId v;
  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Undirected simple graph over dense ids 0..n-1, stored as CSR.
/// Neighbor lists are sorted; the arc index offsets()[u] + j addresses the
/// directed arc u -> neighbors(u)[j] and is stable for the graph's lifetime.
class Graph {
 public:
  Graph() = default;
  /// Edges must be simple; throws ParameterError on self-loops, duplicates or
  /// out-of-range ids.
  Graph(std::uint32_t node_count, std::vector<Edge> edges);

  std::uint32_t node_count() const noexcept { return node_count_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  bool empty() const noexcept { return node_count_ == 0; }

  /// Canonical edge list, u < v, lexicographically sorted.
  std::span<const Edge> edges() const noexcept { return edges_; }

  std::span<const NodeId> neighbors(NodeId u) const noexcept {
    return {targets_.data() + offsets_[u], targets_.data() + offsets_[u + 1]};
  }
  std::uint32_t degree(NodeId u) const noexcept { return offsets_[u + 1] - offsets_[u]; }
  std::uint32_t arc_offset(NodeId u) const noexcept { return offsets_[u]; }
  std::span<const std::uint32_t> offsets() const noexcept { return offsets_; }
  std::span<const NodeId> targets() const noexcept { return targets_; }

  bool has_edge(NodeId u, NodeId v) const noexcept;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.node_count_ == b.node_count_ && a.edges_ == b.edges_;
  }

 private:
  std::uint32_t node_count_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::uint32_t> offsets_{0};
  std::vector<NodeId> targets_;
};

/// Outcome counters of one generation, mostly for statistical tests.
struct GenerationStats {
  std::size_t lattice_edges = 0;
  std::size_t shortcut_attempts = 0;
  std::size_t shortcuts_added = 0;
};

/// Ring lattice with floor(k/2) neighbors per side, then one shortcut attempt
/// per lattice edge with probability p between a uniform pair of distinct
/// nodes. Attempts that would duplicate an edge are dropped; nothing is removed.
Graph generate_newman_watts(const NetworkParams& params, Seed seed, GenerationStats* stats = nullptr);

/// Mean local clustering coefficient (nodes of degree < 2 contribute 0).
double mean_clustering(const Graph& graph);

/// Mean shortest-path length over reachable ordered pairs (BFS from every node).
double mean_shortest_path(const Graph& graph);

}  // namespace seirah
