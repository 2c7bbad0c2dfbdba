#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "seirah/graph.hpp"
#include "seirah/rng.hpp"
#include "seirah/topology.hpp"

namespace seirah {

enum class Status : std::uint8_t { S = 0, E = 1, I = 2, R = 3, A = 4, H = 5 };
inline constexpr std::size_t kStatusCount = 6;

char status_code(Status s) noexcept;
Status parse_status(char c);

/// E, A and I transmit; H is isolated from every contact graph.
constexpr bool is_infectious(Status s) noexcept {
  return s == Status::E || s == Status::A || s == Status::I;
}

/// True for the arrows of the SEIRAH diagram:
/// S->E, E->A, E->I, A->H, A->R, I->H, H->R.
bool is_legal_transition(Status from, Status to) noexcept;

/// Daily transition thresholds. Default interpretation: a node moves when its
/// uniform draw falls below the threshold; competing exits share one draw
/// split into disjoint intervals.
struct TransitionThresholds {
  double e_to_a = 0.0;
  double e_to_i = 0.0;
  double a_to_h = 0.0;
  double a_to_r = 0.0;
  double i_to_h = 0.0;
  double h_to_r = 0.0;
  /// Reads "transition when the draw exceeds the threshold" literally: each
  /// exit fires with probability 1 - threshold, and competing exits are scaled
  /// to sum to at most 1. Sensitivity-analysis switch only.
  bool literal_exceedance = false;

  void validate() const;
};

/// COVID-19 calibration for the Tokyo metropolitan runs (sigma = 0.2, p1 = 0.18).
TransitionThresholds table2_thresholds() noexcept;

/// Per-transition daily probabilities actually applied by progression.
struct TransitionProbabilities {
  double e_to_a, e_to_i, a_to_h, a_to_r, i_to_h, h_to_r;
};
TransitionProbabilities effective_probabilities(const TransitionThresholds& t);

struct TransitionTally {
  std::uint64_t e_to_a = 0, e_to_i = 0, a_to_h = 0, a_to_r = 0, i_to_h = 0, h_to_r = 0;
  std::uint64_t new_h() const noexcept { return a_to_h + i_to_h; }
};

enum class Execution { kSerial, kParallel };

struct SimOptions {
  Execution execution = Execution::kParallel;
};

using ClassCounts = std::array<std::uint64_t, kStatusCount>;

inline std::uint64_t& at(ClassCounts& c, Status s) { return c[static_cast<std::size_t>(s)]; }
inline std::uint64_t at(const ClassCounts& c, Status s) { return c[static_cast<std::size_t>(s)]; }

/// Statuses of every person plus the day counter and the RNG key. All
/// randomness is addressed by (seed, day, ...) so copying the state copies
/// the stream.
class SimState {
 public:
  SimState() = default;
  SimState(std::uint32_t node_count, Seed seed, std::int32_t start_day = 0);

  std::uint32_t node_count() const noexcept { return static_cast<std::uint32_t>(statuses_.size()); }
  std::int32_t day() const noexcept { return day_; }
  Seed seed() const noexcept { return seed_; }
  void reseed(Seed seed) noexcept { seed_ = seed; }

  Status status(NodeId node) const { return statuses_[node]; }
  std::span<const Status> statuses() const noexcept { return statuses_; }
  /// Day on which `node` entered its current status.
  std::int32_t entered_on(NodeId node) const { return entered_[node]; }

  const ClassCounts& counts() const noexcept { return counts_; }
  std::uint64_t count(Status s) const noexcept { return counts_[static_cast<std::size_t>(s)]; }
  std::uint64_t infectious() const noexcept {
    return count(Status::E) + count(Status::A) + count(Status::I);
  }
  std::uint64_t cumulative_h() const noexcept { return cumulative_h_; }

  /// Sets the status of `node`, keeping cached counts in sync.
  void set_status(NodeId node, Status s);
  /// Initial placement: the node counts as having entered `s` before today,
  /// so it may progress on the current day. Not counted as an admission.
  void place(NodeId node, Status s);

  /// Recounts statuses; true iff the cache matches and totals equal N.
  bool counts_consistent() const;

  void advance_day() noexcept { ++day_; }

 private:
  friend TransitionTally progression_step(SimState&, const TransitionThresholds&, const SimOptions&);
  std::vector<Status> statuses_;
  std::vector<std::int32_t> entered_;
  ClassCounts counts_{};
  std::uint64_t cumulative_h_ = 0;
  std::int32_t day_ = 0;
  Seed seed_ = 0;
};

/// Value copy of a SimState. Cheap enough to take once per inferred day.
struct StateSnapshot {
  SimState state;
};

StateSnapshot snapshot(const SimState& state);
/// Throws ParameterError if the snapshot size differs from the topology.
SimState restore(const StateSnapshot& snap, const MetroTopology& topology);

struct DailyCounts {
  std::int32_t day = 0;
  ClassCounts counts{};
  std::uint64_t new_e = 0;
  std::uint64_t new_h = 0;
  TransitionTally tally;
  double beta = 0.0;
};

/// One zone-local contact graph. Local node i is global `members[i]` when
/// `members` is non-empty, otherwise `offset + i`. Nodes flagged in `away`
/// (global mask) neither transmit nor receive on this graph.
struct ZoneGraph {
  const Graph* graph = nullptr;
  std::uint32_t offset = 0;
  std::span<const NodeId> members;
  std::span<const std::uint8_t> away;
  std::uint32_t lane = 0;

  NodeId global(NodeId local) const noexcept {
    return members.empty() ? offset + local : members[local];
  }
};

/// Observes status changes, e.g. to build a per-node history.
class StateObserver {
 public:
  virtual ~StateObserver() = default;
  /// Called after each time zone (1 = residence hours, 2 = work hours,
  /// including the end-of-day progression).
  virtual void after_zone(const SimState& state, int zone) = 0;
};

/// Runs one Bernoulli(beta) trial per arc from an infectious to a susceptible
/// node; exposed susceptibles become E. Returns S->E conversions.
std::uint64_t contagion_step(SimState& state, const Graph& graph, double beta,
                             const SimOptions& options = {}, std::uint32_t lane = 0);

/// End-of-day progression. Nodes that entered E today stay put.
TransitionTally progression_step(SimState& state, const TransitionThresholds& thresholds,
                                 const SimOptions& options = {});

/// Zone 1 on residence graphs, zone 2 on the day's work network and on
/// residence edges between people not at work, then progression.
/// `indicator` has one entry or one per region.
DailyCounts simulate_day(SimState& state, const MetroTopology& topology, double beta,
                         std::span<const double> indicator, const TransitionThresholds& thresholds,
                         const SimOptions& options = {}, StateObserver* observer = nullptr);

/// Iterates simulate_day for `days` days. Throws ParameterError if a series
/// is shorter than `days`.
std::vector<DailyCounts> simulate_horizon(SimState& state, const MetroTopology& topology,
                                          std::span<const double> betas,
                                          std::span<const std::vector<double>> indicators,
                                          std::size_t days, const TransitionThresholds& thresholds,
                                          const SimOptions& options = {},
                                          StateObserver* observer = nullptr);

/// Places `per_region` E nodes uniformly without replacement in each region.
void seed_exposed(SimState& state, const MetroTopology& topology, std::uint32_t per_region, Seed seed);

namespace kernels {

/// Marks exposed[global] = 1 for each susceptible node of `zone` with a
/// successful incoming trial; returns the number marked. Reads statuses only.
std::uint64_t mark_exposures_serial(const ZoneGraph& zone, std::span<const Status> statuses,
                                    double beta, Seed key, std::uint32_t day,
                                    std::span<std::uint8_t> exposed);
std::uint64_t mark_exposures_parallel(const ZoneGraph& zone, std::span<const Status> statuses,
                                      double beta, Seed key, std::uint32_t day,
                                      std::span<std::uint8_t> exposed);

/// In-place progression of `statuses`; `entered` is updated for movers.
TransitionTally progress_serial(std::span<Status> statuses, std::span<std::int32_t> entered,
                                const TransitionProbabilities& probs, Seed key, std::int32_t day);
TransitionTally progress_parallel(std::span<Status> statuses, std::span<std::int32_t> entered,
                                  const TransitionProbabilities& probs, Seed key, std::int32_t day);

}  // namespace kernels

}  // namespace seirah
