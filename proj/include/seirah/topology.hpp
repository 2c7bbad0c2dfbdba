#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "seirah/graph.hpp"
#include "seirah/rng.hpp"

namespace seirah {

/// A residential region. Population and commuting are full-scale persons;
/// `scale` divides both to obtain simulated node counts.
struct RegionSpec {
  std::string name;
  std::uint64_t population = 0;
  std::uint64_t commuting = 0;
  double scale = 1.0;

  std::uint32_t scaled_population() const;
  std::uint32_t scaled_commuting() const;
  void validate() const;
};

/// Degree and shortcut probability shared by all graphs of one kind.
struct LinkParams {
  std::uint32_t k = 0;
  double p = 0.0;
};

/// Round-half-up of x with a floor of `minimum`.
std::uint32_t round_count(double x, std::uint32_t minimum = 0);

/// Residence graphs plus commuter pools. Immutable once built; share freely
/// across replicates.
class MetroTopology {
 public:
  MetroTopology(std::vector<RegionSpec> regions, std::vector<Graph> residences,
                std::vector<std::vector<NodeId>> pools, LinkParams residence_params,
                LinkParams work_params);

  std::size_t region_count() const noexcept { return regions_.size(); }
  const RegionSpec& region(std::size_t r) const { return regions_.at(r); }
  std::span<const RegionSpec> regions() const noexcept { return regions_; }
  const Graph& residence(std::size_t r) const { return residences_.at(r); }

  /// Commuter pool of region r as global ids, in draw order.
  std::span<const NodeId> pool(std::size_t r) const { return pools_.at(r); }
  std::size_t total_pool() const noexcept;

  std::uint32_t node_count() const noexcept { return offsets_.back(); }
  NodeId global_id(std::size_t region, NodeId local) const { return offsets_.at(region) + local; }
  std::uint32_t region_offset(std::size_t region) const { return offsets_.at(region); }
  std::size_t region_of(NodeId global) const;
  NodeId local_id(NodeId global) const { return global - offsets_[region_of(global)]; }

  const LinkParams& residence_params() const noexcept { return residence_params_; }
  const LinkParams& work_params() const noexcept { return work_params_; }

 private:
  std::vector<RegionSpec> regions_;
  std::vector<Graph> residences_;
  std::vector<std::vector<NodeId>> pools_;
  std::vector<std::uint32_t> offsets_;
  LinkParams residence_params_;
  LinkParams work_params_;
};

MetroTopology build_metro(std::vector<RegionSpec> regions, LinkParams residence, LinkParams work,
                          Seed seed);

/// The day's commuters and their workplace contacts. `graph` node i is the
/// person `members[i]` (global id).
struct WorkNetwork {
  std::vector<NodeId> members;
  Graph graph;
};

/// Active subset per region of size round(indicator * pool), followed by a
/// Newman-Watts graph over the union. Indicators above 1 are clamped with a
/// warning; negative ones are rejected. `per_region` must have either one
/// entry (applied to all regions) or one per region.
WorkNetwork active_work_network(const MetroTopology& topology, std::span<const double> per_region,
                                Seed day_seed);

inline WorkNetwork active_work_network(const MetroTopology& topology, double indicator,
                                       Seed day_seed) {
  return active_work_network(topology, std::span<const double>(&indicator, 1), day_seed);
}

/// Writes "u v" per line in global ids: residence edges first, then `work`
/// edges if given.
void write_edge_list(const MetroTopology& topology, const WorkNetwork* work, const std::string& path);

}  // namespace seirah
