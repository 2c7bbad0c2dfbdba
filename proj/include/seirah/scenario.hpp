#pragma once

#include <cstdint>
#include <vector>

#include "seirah/epidemic.hpp"
#include "seirah/topology.hpp"

namespace seirah {

/// Everything needed to build a metro and its day-0 state.
struct Scenario {
  std::vector<RegionSpec> regions;
  LinkParams residence{4, 0.05};
  LinkParams work{10, 0.1};
  TransitionThresholds thresholds = table2_thresholds();
  std::uint32_t seeds_per_region = 5;
  Seed topology_seed = 1;
  Seed master_seed = 1;

  MetroTopology build() const;
  /// All susceptible except `seeds_per_region` E nodes per region; the state's
  /// RNG key is the master seed.
  SimState initial_state(const MetroTopology& topology) const;
};

/// Tokyo, Kanagawa, Saitama and Chiba: population and daily commuters to the
/// center, in persons.
std::vector<RegionSpec> tokyo_regions(double scale = 100.0);

/// Five 200-person regions, 10% of each commuting.
std::vector<RegionSpec> toy_regions();

}  // namespace seirah
