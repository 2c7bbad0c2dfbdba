#include "seirah/scenario.hpp"

namespace seirah {

MetroTopology Scenario::build() const { return build_metro(regions, residence, work, topology_seed); }

SimState Scenario::initial_state(const MetroTopology& topology) const {
  SimState state(topology.node_count(), master_seed);
  seed_exposed(state, topology, seeds_per_region, derive_seed(master_seed, 0x5EED));
  return state;
}

std::vector<RegionSpec> tokyo_regions(double scale) {
  return {{"Tokyo", 13'520'000, 4'864'000, scale},
          {"Kanagawa", 9'200'000, 888'000, scale},
          {"Saitama", 7'340'000, 780'000, scale},
          {"Chiba", 6'280'000, 598'000, scale}};
}

std::vector<RegionSpec> toy_regions() {
  std::vector<RegionSpec> out;
  for (int r = 0; r < 5; ++r) out.push_back({"region" + std::to_string(r), 200, 20, 1.0});
  return out;
}

}  // namespace seirah
