#include "seirah/epidemic.hpp"

#include <algorithm>
#include <string>

#include "seirah/error.hpp"

namespace seirah {

char status_code(Status s) noexcept { return "SEIRAH"[static_cast<std::size_t>(s)]; }

Status parse_status(char c) {
  switch (c) {
    case 'S': return Status::S;
    case 'E': return Status::E;
    case 'I': return Status::I;
    case 'R': return Status::R;
    case 'A': return Status::A;
    case 'H': return Status::H;
    default: throw DataError(std::string("unknown status code '") + c + "'");
  }
}

bool is_legal_transition(Status from, Status to) noexcept {
  switch (from) {
    case Status::S: return to == Status::E;
    case Status::E: return to == Status::A || to == Status::I;
    case Status::A: return to == Status::H || to == Status::R;
    case Status::I: return to == Status::H;
    case Status::H: return to == Status::R;
    case Status::R: return false;
  }
  return false;
}

void TransitionThresholds::validate() const {
  const std::pair<const char*, double> fields[] = {{"e_to_a", e_to_a}, {"e_to_i", e_to_i},
                                                   {"a_to_h", a_to_h}, {"a_to_r", a_to_r},
                                                   {"i_to_h", i_to_h}, {"h_to_r", h_to_r}};
  for (const auto& [name, value] : fields) {
    if (!(value >= 0.0 && value <= 1.0)) {
      throw ParameterError(std::string("threshold ") + name + " must lie in [0, 1]");
    }
  }
  if (e_to_a + e_to_i > 1.0) throw ParameterError("thresholds e_to_a + e_to_i exceed 1");
  if (a_to_h + a_to_r > 1.0) throw ParameterError("thresholds a_to_h + a_to_r exceed 1");
}

TransitionThresholds table2_thresholds() noexcept {
  return {.e_to_a = 0.036, .e_to_i = 0.164, .a_to_h = 0.028, .a_to_r = 0.08, .i_to_h = 0.950,
          .h_to_r = 0.100};
}

TransitionProbabilities effective_probabilities(const TransitionThresholds& t) {
  t.validate();
  if (!t.literal_exceedance) return {t.e_to_a, t.e_to_i, t.a_to_h, t.a_to_r, t.i_to_h, t.h_to_r};
  auto pair = [](double a, double b) {
    a = 1.0 - a;
    b = 1.0 - b;
    const double sum = a + b;
    return sum > 1.0 ? std::pair{a / sum, b / sum} : std::pair{a, b};
  };
  const auto [ea, ei] = pair(t.e_to_a, t.e_to_i);
  const auto [ah, ar] = pair(t.a_to_h, t.a_to_r);
  return {ea, ei, ah, ar, 1.0 - t.i_to_h, 1.0 - t.h_to_r};
}

SimState::SimState(std::uint32_t node_count, Seed seed, std::int32_t start_day)
    : statuses_(node_count, Status::S),
      entered_(node_count, start_day - 1),
      day_(start_day),
      seed_(seed) {
  counts_[static_cast<std::size_t>(Status::S)] = node_count;
}

void SimState::set_status(NodeId node, Status s) {
  Status& current = statuses_.at(node);
  if (current == s) return;
  --counts_[static_cast<std::size_t>(current)];
  ++counts_[static_cast<std::size_t>(s)];
  if (s == Status::H) ++cumulative_h_;
  current = s;
  entered_[node] = day_;
}

void SimState::place(NodeId node, Status s) {
  Status& current = statuses_.at(node);
  --counts_[static_cast<std::size_t>(current)];
  ++counts_[static_cast<std::size_t>(s)];
  current = s;
  entered_[node] = day_ - 1;
}

bool SimState::counts_consistent() const {
  ClassCounts recount{};
  for (Status s : statuses_) ++recount[static_cast<std::size_t>(s)];
  std::uint64_t total = 0;
  for (auto c : counts_) total += c;
  return recount == counts_ && total == statuses_.size();
}

StateSnapshot snapshot(const SimState& state) { return {state}; }

SimState restore(const StateSnapshot& snap, const MetroTopology& topology) {
  if (snap.state.node_count() != topology.node_count()) {
    throw ParameterError("snapshot has " + std::to_string(snap.state.node_count()) +
                         " nodes but topology has " + std::to_string(topology.node_count()));
  }
  return snap.state;
}

namespace {

void check_beta(double beta) {
  if (!(beta >= 0.0 && beta <= 1.0)) {
    throw ParameterError("beta must lie in [0, 1] (got " + std::to_string(beta) + ")");
  }
}

std::uint64_t mark(const ZoneGraph& zone, const SimState& state, double beta, std::span<std::uint8_t> exposed,
                   const SimOptions& options) {
  const auto day = static_cast<std::uint32_t>(state.day());
  return options.execution == Execution::kSerial
             ? kernels::mark_exposures_serial(zone, state.statuses(), beta, state.seed(), day, exposed)
             : kernels::mark_exposures_parallel(zone, state.statuses(), beta, state.seed(), day, exposed);
}

std::uint64_t apply_exposures(SimState& state, std::span<std::uint8_t> exposed) {
  std::uint64_t applied = 0;
  for (NodeId v = 0; v < exposed.size(); ++v) {
    if (!exposed[v]) continue;
    state.set_status(v, Status::E);
    exposed[v] = 0;
    ++applied;
  }
  return applied;
}

constexpr std::uint32_t kWorkLane = 0xFFFFu;

std::uint32_t zone_lane(int zone, std::size_t graph) {
  return (static_cast<std::uint32_t>(zone) << 16) | static_cast<std::uint32_t>(graph);
}

}  // namespace

std::uint64_t contagion_step(SimState& state, const Graph& graph, double beta, const SimOptions& options,
                             std::uint32_t lane) {
  check_beta(beta);
  if (graph.node_count() > state.node_count()) {
    throw ParameterError("contagion graph has more nodes than the state");
  }
  std::vector<std::uint8_t> exposed(graph.node_count(), 0);
  ZoneGraph zone{.graph = &graph, .lane = lane};
  mark(zone, state, beta, exposed, options);
  return apply_exposures(state, exposed);
}

TransitionTally progression_step(SimState& state, const TransitionThresholds& thresholds,
                                 const SimOptions& options) {
  const auto probs = effective_probabilities(thresholds);
  const auto tally = options.execution == Execution::kSerial
                         ? kernels::progress_serial(state.statuses_, state.entered_, probs, state.seed_, state.day_)
                         : kernels::progress_parallel(state.statuses_, state.entered_, probs, state.seed_,
                                                      state.day_);
  auto& c = state.counts_;
  auto idx = [](Status s) { return static_cast<std::size_t>(s); };
  c[idx(Status::E)] -= tally.e_to_a + tally.e_to_i;
  c[idx(Status::A)] += tally.e_to_a;
  c[idx(Status::I)] += tally.e_to_i;
  c[idx(Status::A)] -= tally.a_to_h + tally.a_to_r;
  c[idx(Status::I)] -= tally.i_to_h;
  c[idx(Status::H)] += tally.a_to_h + tally.i_to_h;
  c[idx(Status::H)] -= tally.h_to_r;
  c[idx(Status::R)] += tally.a_to_r + tally.h_to_r;
  state.cumulative_h_ += tally.new_h();
  return tally;
}

DailyCounts simulate_day(SimState& state, const MetroTopology& topology, double beta,
                         std::span<const double> indicator, const TransitionThresholds& thresholds,
                         const SimOptions& options, StateObserver* observer) {
  check_beta(beta);
  thresholds.validate();
  if (state.node_count() != topology.node_count()) {
    throw ParameterError("state size does not match topology");
  }
  const std::int32_t today = state.day();
  std::vector<std::uint8_t> exposed(state.node_count(), 0);
  std::uint64_t new_e = 0;

  // Zone 1: everyone at home.
  for (std::size_t r = 0; r < topology.region_count(); ++r) {
    ZoneGraph zone{.graph = &topology.residence(r), .offset = topology.region_offset(r), .lane = zone_lane(1, r)};
    mark(zone, state, beta, exposed, options);
  }
  new_e += apply_exposures(state, exposed);
  if (observer) observer->after_zone(state, 1);

  // Zone 2: active commuters at work, everyone else at home without them.
  const auto work = active_work_network(topology, indicator,
                                        derive_seed(state.seed(), static_cast<std::uint32_t>(today), 0x574Bu));
  std::vector<std::uint8_t> away(state.node_count(), 0);
  for (NodeId m : work.members) away[m] = 1;
  ZoneGraph work_zone{.graph = &work.graph, .members = work.members, .lane = zone_lane(2, kWorkLane)};
  mark(work_zone, state, beta, exposed, options);
  for (std::size_t r = 0; r < topology.region_count(); ++r) {
    ZoneGraph zone{.graph = &topology.residence(r),
                   .offset = topology.region_offset(r),
                   .away = away,
                   .lane = zone_lane(2, r)};
    mark(zone, state, beta, exposed, options);
  }
  new_e += apply_exposures(state, exposed);

  const auto tally = progression_step(state, thresholds, options);
  if (observer) observer->after_zone(state, 2);

  DailyCounts out;
  out.day = today;
  out.counts = state.counts();
  out.new_e = new_e;
  out.new_h = tally.new_h();
  out.tally = tally;
  out.beta = beta;
  state.advance_day();
  return out;
}

std::vector<DailyCounts> simulate_horizon(SimState& state, const MetroTopology& topology,
                                          std::span<const double> betas,
                                          std::span<const std::vector<double>> indicators,
                                          std::size_t days, const TransitionThresholds& thresholds,
                                          const SimOptions& options, StateObserver* observer) {
  if (betas.size() < days) throw ParameterError("beta series shorter than the horizon");
  if (indicators.size() < days) throw ParameterError("indicator series shorter than the horizon");
  std::vector<DailyCounts> out;
  out.reserve(days);
  for (std::size_t d = 0; d < days; ++d) {
    out.push_back(simulate_day(state, topology, betas[d], indicators[d], thresholds, options, observer));
  }
  return out;
}

void seed_exposed(SimState& state, const MetroTopology& topology, std::uint32_t per_region, Seed seed) {
  for (std::size_t r = 0; r < topology.region_count(); ++r) {
    const auto n = topology.residence(r).node_count();
    if (per_region > n) throw ParameterError("seeding count exceeds region size");
    std::vector<NodeId> ids(n);
    for (NodeId i = 0; i < n; ++i) ids[i] = topology.global_id(r, i);
    CounterRng rng(derive_seed(seed, static_cast<std::uint32_t>(r), 5),
                   static_cast<std::uint64_t>(Purpose::kSeeding));
    for (std::uint32_t i = 0; i < per_region; ++i) {
      std::swap(ids[i], ids[i + rng.below(n - i)]);
      state.place(ids[i], Status::E);
    }
  }
}

}  // namespace seirah
