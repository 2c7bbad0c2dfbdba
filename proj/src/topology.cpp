#include "seirah/topology.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>

#include <spdlog/spdlog.h>

#include "seirah/error.hpp"

namespace seirah {

std::uint32_t round_count(double x, std::uint32_t minimum) {
  const auto rounded = static_cast<std::uint32_t>(std::floor(x + 0.5));
  return std::max(rounded, minimum);
}

std::uint32_t RegionSpec::scaled_population() const {
  return round_count(static_cast<double>(population) / scale, 1);
}

std::uint32_t RegionSpec::scaled_commuting() const {
  return round_count(static_cast<double>(commuting) / scale);
}

void RegionSpec::validate() const {
  if (!(scale > 0.0)) throw ParameterError("region '" + name + "': scale must be > 0");
  if (population == 0) throw ParameterError("region '" + name + "': population must be > 0");
  if (commuting > population) {
    throw ParameterError("region '" + name + "': commuting exceeds population");
  }
  if (scaled_commuting() > scaled_population()) {
    throw ParameterError("region '" + name + "': scaled commuter pool exceeds region size");
  }
}

MetroTopology::MetroTopology(std::vector<RegionSpec> regions, std::vector<Graph> residences,
                             std::vector<std::vector<NodeId>> pools, LinkParams residence_params,
                             LinkParams work_params)
    : regions_(std::move(regions)),
      residences_(std::move(residences)),
      pools_(std::move(pools)),
      residence_params_(residence_params),
      work_params_(work_params) {
  if (regions_.size() != residences_.size() || regions_.size() != pools_.size()) {
    throw ParameterError("topology: region, residence and pool counts differ");
  }
  offsets_.assign(1, 0);
  for (const auto& g : residences_) offsets_.push_back(offsets_.back() + g.node_count());
}

std::size_t MetroTopology::total_pool() const noexcept {
  std::size_t total = 0;
  for (const auto& p : pools_) total += p.size();
  return total;
}

std::size_t MetroTopology::region_of(NodeId global) const {
  if (global >= node_count()) throw ParameterError("global id out of range");
  auto it = std::upper_bound(offsets_.begin(), offsets_.end(), global);
  return static_cast<std::size_t>(it - offsets_.begin()) - 1;
}

namespace {

// Partial Fisher-Yates: the first `count` entries become a uniform sample.
void sample_prefix(std::vector<NodeId>& items, std::size_t count, CounterRng& rng) {
  for (std::size_t i = 0; i < count; ++i) {
    const auto j = i + rng.below(items.size() - i);
    std::swap(items[i], items[j]);
  }
  items.resize(count);
}

}  // namespace

MetroTopology build_metro(std::vector<RegionSpec> regions, LinkParams residence, LinkParams work,
                          Seed seed) {
  if (regions.empty()) throw ParameterError("build_metro: region list is empty");
  for (const auto& r : regions) r.validate();

  std::vector<Graph> graphs;
  std::vector<std::vector<NodeId>> pools;
  std::uint32_t offset = 0;
  for (std::size_t r = 0; r < regions.size(); ++r) {
    const auto n = regions[r].scaled_population();
    graphs.push_back(generate_newman_watts({n, residence.k, residence.p},
                                           derive_seed(seed, static_cast<std::uint32_t>(r), 1)));
    std::vector<NodeId> ids(n);
    std::iota(ids.begin(), ids.end(), offset);
    CounterRng rng(derive_seed(seed, static_cast<std::uint32_t>(r), 2),
                   static_cast<std::uint64_t>(Purpose::kCommuterPool));
    sample_prefix(ids, regions[r].scaled_commuting(), rng);
    pools.push_back(std::move(ids));
    offset += n;
  }
  return MetroTopology(std::move(regions), std::move(graphs), std::move(pools), residence, work);
}

WorkNetwork active_work_network(const MetroTopology& topology, std::span<const double> per_region,
                                Seed day_seed) {
  const auto regions = topology.region_count();
  if (per_region.size() != 1 && per_region.size() != regions) {
    throw ParameterError("indicator must have 1 or " + std::to_string(regions) + " entries");
  }
  WorkNetwork out;
  for (std::size_t r = 0; r < regions; ++r) {
    double indicator = per_region.size() == 1 ? per_region[0] : per_region[r];
    if (!(indicator >= 0.0)) throw ParameterError("indicator must be >= 0");
    if (indicator > 1.0) {
      spdlog::warn("indicator {} above 1 clamped to 1 for region '{}'", indicator,
                   topology.region(r).name);
      indicator = 1.0;
    }
    auto pool = topology.pool(r);
    const auto count = std::min<std::size_t>(round_count(indicator * static_cast<double>(pool.size())),
                                             pool.size());
    std::vector<NodeId> members(pool.begin(), pool.end());
    CounterRng rng(derive_seed(day_seed, static_cast<std::uint32_t>(r), 3),
                   static_cast<std::uint64_t>(Purpose::kWorkNetwork));
    sample_prefix(members, count, rng);
    out.members.insert(out.members.end(), members.begin(), members.end());
  }

  const auto n = static_cast<std::uint32_t>(out.members.size());
  const auto& params = topology.work_params();
  if (n >= 3) {
    const std::uint32_t k = std::min(params.k, n - 1);
    out.graph = generate_newman_watts({n, k, params.p}, derive_seed(day_seed, 0xFFFFu, 4));
  } else if (n == 2 && params.k >= 1) {
    out.graph = Graph(2, {{0, 1}});
  } else {
    out.graph = Graph(n, {});
  }
  return out;
}

void write_edge_list(const MetroTopology& topology, const WorkNetwork* work, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw IoError("cannot open '" + path + "' for writing");
  for (std::size_t r = 0; r < topology.region_count(); ++r) {
    const auto offset = topology.region_offset(r);
    for (const auto& e : topology.residence(r).edges()) os << offset + e.u << ' ' << offset + e.v << '\n';
  }
  if (work) {
    for (const auto& e : work->graph.edges()) {
      os << work->members[e.u] << ' ' << work->members[e.v] << '\n';
    }
  }
  if (!os) throw IoError("write failed for '" + path + "'");
}

}  // namespace seirah
