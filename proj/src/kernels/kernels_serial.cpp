// Serial reference kernels. The OpenMP versions in kernels_omp.cpp must
// produce bit-identical results; tests compare the two directly.

#include "seirah/epidemic.hpp"

namespace seirah::kernels {

std::uint64_t mark_exposures_serial(const ZoneGraph& zone, std::span<const Status> statuses,
                                    double beta, Seed key, std::uint32_t day,
                                    std::span<std::uint8_t> exposed) {
  const Graph& g = *zone.graph;
  const bool masked = !zone.away.empty();
  std::uint64_t marked = 0;
  for (NodeId v = 0; v < g.node_count(); ++v) {
    const NodeId gv = zone.global(v);
    if (statuses[gv] != Status::S || (masked && zone.away[gv])) continue;
    const auto nb = g.neighbors(v);
    const std::uint32_t arc0 = g.arc_offset(v);
    for (std::size_t j = 0; j < nb.size(); ++j) {
      const NodeId gw = zone.global(nb[j]);
      if (!is_infectious(statuses[gw]) || (masked && zone.away[gw])) continue;
      if (uniform_at(key, Purpose::kContagion, zone.lane, day, arc0 + static_cast<std::uint32_t>(j)) < beta) {
        exposed[gv] = 1;
        ++marked;
        break;
      }
    }
  }
  return marked;
}

TransitionTally progress_serial(std::span<Status> statuses, std::span<std::int32_t> entered,
                                const TransitionProbabilities& probs, Seed key, std::int32_t day) {
  TransitionTally tally;
  const auto uday = static_cast<std::uint32_t>(day);
  for (std::size_t v = 0; v < statuses.size(); ++v) {
    const Status s = statuses[v];
    if (s == Status::S || s == Status::R || entered[v] == day) continue;
    const double u = uniform_at(key, Purpose::kProgression, 0, uday, static_cast<std::uint32_t>(v));
    Status next = s;
    switch (s) {
      case Status::E:
        if (u < probs.e_to_a) {
          next = Status::A;
          ++tally.e_to_a;
        } else if (u < probs.e_to_a + probs.e_to_i) {
          next = Status::I;
          ++tally.e_to_i;
        }
        break;
      case Status::A:
        if (u < probs.a_to_h) {
          next = Status::H;
          ++tally.a_to_h;
        } else if (u < probs.a_to_h + probs.a_to_r) {
          next = Status::R;
          ++tally.a_to_r;
        }
        break;
      case Status::I:
        if (u < probs.i_to_h) {
          next = Status::H;
          ++tally.i_to_h;
        }
        break;
      case Status::H:
        if (u < probs.h_to_r) {
          next = Status::R;
          ++tally.h_to_r;
        }
        break;
      default:
        break;
    }
    if (next != s) {
      statuses[v] = next;
      entered[v] = day;
    }
  }
  return tally;
}

}  // namespace seirah::kernels
