#pragma once

// Shared toy metro used across suites: five regions of 200 people, 20
// commuters each, k_r = 4, k_w = 10, two seeded E per region.

#include "seirah/scenario.hpp"

namespace seirah::testing {

inline Scenario toy_scenario(Seed topology_seed = 1, Seed master_seed = 1, double p_r = 0.05, double p_w = 0.1) {
  Scenario s;
  s.regions = toy_regions();
  s.residence = {4, p_r};
  s.work = {10, p_w};
  s.thresholds = table2_thresholds();
  s.seeds_per_region = 2;
  s.topology_seed = topology_seed;
  s.master_seed = master_seed;
  return s;
}

inline std::vector<std::vector<double>> full_commute(std::size_t days) {
  return std::vector<std::vector<double>>(days, std::vector<double>{1.0});
}

}  // namespace seirah::testing
