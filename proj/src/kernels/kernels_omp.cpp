#include "seirah/epidemic.hpp"

namespace seirah::kernels {

// Pull formulation: each susceptible node owns its exposure flag, so the loop
// has no write conflicts and the per-arc counter keeps draws order-free.
std::uint64_t mark_exposures_parallel(const ZoneGraph& zone, std::span<const Status> statuses,
                                      double beta, Seed key, std::uint32_t day,
                                      std::span<std::uint8_t> exposed) {
  const Graph& g = *zone.graph;
  const bool masked = !zone.away.empty();
  const auto n = static_cast<std::int64_t>(g.node_count());
  std::uint64_t marked = 0;
#pragma omp parallel for schedule(static) reduction(+ : marked)
  for (std::int64_t i = 0; i < n; ++i) {
    const auto v = static_cast<NodeId>(i);
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

TransitionTally progress_parallel(std::span<Status> statuses, std::span<std::int32_t> entered,
                                  const TransitionProbabilities& probs, Seed key, std::int32_t day) {
  std::uint64_t ea = 0, ei = 0, ah = 0, ar = 0, ih = 0, hr = 0;
  const auto uday = static_cast<std::uint32_t>(day);
  const auto n = static_cast<std::int64_t>(statuses.size());
#pragma omp parallel for schedule(static) reduction(+ : ea, ei, ah, ar, ih, hr)
  for (std::int64_t i = 0; i < n; ++i) {
    const Status s = statuses[i];
    if (s == Status::S || s == Status::R || entered[i] == day) continue;
    const double u = uniform_at(key, Purpose::kProgression, 0, uday, static_cast<std::uint32_t>(i));
    Status next = s;
    if (s == Status::E) {
      if (u < probs.e_to_a) {
        next = Status::A;
        ++ea;
      } else if (u < probs.e_to_a + probs.e_to_i) {
        next = Status::I;
        ++ei;
      }
    } else if (s == Status::A) {
      if (u < probs.a_to_h) {
        next = Status::H;
        ++ah;
      } else if (u < probs.a_to_h + probs.a_to_r) {
        next = Status::R;
        ++ar;
      }
    } else if (s == Status::I) {
      if (u < probs.i_to_h) {
        next = Status::H;
        ++ih;
      }
    } else if (u < probs.h_to_r) {
      next = Status::R;
      ++hr;
    }
    if (next != s) {
      statuses[i] = next;
      entered[i] = day;
    }
  }
  return {ea, ei, ah, ar, ih, hr};
}

}  // namespace seirah::kernels
