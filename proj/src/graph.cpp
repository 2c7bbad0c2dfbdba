#include "seirah/graph.hpp"

#include <algorithm>
#include <string>
#include <unordered_set>

#include "seirah/error.hpp"

namespace seirah {

void NetworkParams::validate() const {
  if (n < 3) throw ParameterError("network n must be >= 3 (got " + std::to_string(n) + ")");
  if (k < 1) throw ParameterError("network k must be >= 1 (got " + std::to_string(k) + ")");
  if (k >= n) {
    throw ParameterError("network k must be < n (got k=" + std::to_string(k) +
                         ", n=" + std::to_string(n) + ")");
  }
  if (!(p >= 0.0 && p <= 1.0)) {
    throw ParameterError("network p must lie in [0, 1] (got " + std::to_string(p) + ")");
  }
}

Graph::Graph(std::uint32_t node_count, std::vector<Edge> edges) : node_count_(node_count) {
  for (auto& e : edges) {
    if (e.u == e.v) throw ParameterError("self-loop at node " + std::to_string(e.u));
    if (e.u >= node_count || e.v >= node_count) throw ParameterError("edge endpoint out of range");
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::sort(edges.begin(), edges.end());
  if (std::adjacent_find(edges.begin(), edges.end()) != edges.end()) {
    throw ParameterError("duplicate edge");
  }
  edges_ = std::move(edges);

  offsets_.assign(node_count_ + 1, 0);
  for (const auto& e : edges_) {
    ++offsets_[e.u + 1];
    ++offsets_[e.v + 1];
  }
  for (std::uint32_t i = 0; i < node_count_; ++i) offsets_[i + 1] += offsets_[i];
  targets_.resize(offsets_.back());
  std::vector<std::uint32_t> cursor(offsets_.begin(), offsets_.end() - 1);
  for (const auto& e : edges_) {
    targets_[cursor[e.u]++] = e.v;
    targets_[cursor[e.v]++] = e.u;
  }
  for (std::uint32_t i = 0; i < node_count_; ++i) {
    std::sort(targets_.begin() + offsets_[i], targets_.begin() + offsets_[i + 1]);
  }
}

bool Graph::has_edge(NodeId u, NodeId v) const noexcept {
  if (u >= node_count_ || v >= node_count_) return false;
  auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

Graph generate_newman_watts(const NetworkParams& params, Seed seed, GenerationStats* stats) {
  params.validate();
  const std::uint32_t n = params.n;
  const std::uint32_t half = params.k / 2;

  std::vector<Edge> edges;
  const std::size_t lattice = static_cast<std::size_t>(n) * half;
  edges.reserve(lattice + static_cast<std::size_t>(params.p * static_cast<double>(lattice) * 1.1) + 16);
  for (std::uint32_t u = 0; u < n; ++u) {
    for (std::uint32_t d = 1; d <= half; ++d) edges.push_back({u, (u + d) % n});
  }

  // A pair is a lattice edge iff its circular distance is at most `half`.
  auto on_lattice = [&](NodeId a, NodeId b) {
    const std::uint32_t diff = a > b ? a - b : b - a;
    return std::min(diff, n - diff) <= half;
  };

  CounterRng rng(seed, static_cast<std::uint64_t>(Purpose::kGraph));
  std::unordered_set<std::uint64_t> shortcuts;
  std::size_t attempts = 0;
  for (std::size_t e = 0; e < lattice; ++e) {
    if (!rng.bernoulli(params.p)) continue;
    ++attempts;
    auto a = static_cast<NodeId>(rng.below(n));
    auto b = static_cast<NodeId>(rng.below(n - 1));
    if (b >= a) ++b;  // uniform over distinct pairs
    if (a > b) std::swap(a, b);
    if (on_lattice(a, b)) continue;
    if (!shortcuts.insert((static_cast<std::uint64_t>(a) << 32) | b).second) continue;
    edges.push_back({a, b});
  }
  if (stats) {
    stats->lattice_edges = lattice;
    stats->shortcut_attempts = attempts;
    stats->shortcuts_added = edges.size() - lattice;
  }
  return Graph(n, std::move(edges));
}

double mean_clustering(const Graph& graph) {
  const auto n = graph.node_count();
  if (n == 0) return 0.0;
  double total = 0.0;
  for (NodeId u = 0; u < n; ++u) {
    auto nb = graph.neighbors(u);
    const std::size_t d = nb.size();
    if (d < 2) continue;
    std::size_t links = 0;
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = i + 1; j < d; ++j) {
        if (graph.has_edge(nb[i], nb[j])) ++links;
      }
    }
    total += 2.0 * static_cast<double>(links) / static_cast<double>(d * (d - 1));
  }
  return total / n;
}

double mean_shortest_path(const Graph& graph) {
  const auto n = graph.node_count();
  std::vector<std::uint32_t> dist(n);
  std::vector<NodeId> queue(n);
  double sum = 0.0;
  std::size_t pairs = 0;
  constexpr std::uint32_t kUnseen = ~0u;
  for (NodeId s = 0; s < n; ++s) {
    std::fill(dist.begin(), dist.end(), kUnseen);
    std::size_t head = 0, tail = 0;
    dist[s] = 0;
    queue[tail++] = s;
    while (head < tail) {
      const NodeId u = queue[head++];
      for (NodeId v : graph.neighbors(u)) {
        if (dist[v] != kUnseen) continue;
        dist[v] = dist[u] + 1;
        sum += dist[v];
        ++pairs;
        queue[tail++] = v;
      }
    }
  }
  return pairs ? sum / static_cast<double>(pairs) : 0.0;
}

}  // namespace seirah
