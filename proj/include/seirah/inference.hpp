#pragma once

#include <atomic>
#include <cstddef>
#include <span>
#include <vector>

#include "seirah/epidemic.hpp"
#include "seirah/topology.hpp"

namespace seirah {

struct InferenceConfig {
  double epsilon = 0.01;            // stop once the bracket is this narrow
  std::size_t window = 7;           // forward horizon m; the loss spans m + 1 days
  std::size_t replicates = 20;      // forward runs averaged per candidate
  double beta_prior = 0.5;          // stands in for beta_{t-1} on the first day
  std::size_t max_iterations = 60;

  void validate() const;
};

/// Topology plus dynamics used to score candidate betas. Counts every
/// replicate forward simulation it runs.
class ForwardModel {
 public:
  ForwardModel(const MetroTopology& topology, TransitionThresholds thresholds, SimOptions options = {})
      : topology_(&topology), thresholds_(thresholds), options_(options) {}

  const MetroTopology& topology() const noexcept { return *topology_; }
  const TransitionThresholds& thresholds() const noexcept { return thresholds_; }
  const SimOptions& options() const noexcept { return options_; }

  /// Mean daily new-H over one forward run per sub-seed, each restored from
  /// `snap` and simulated `days` days at constant `beta`. Replicates may run
  /// concurrently; the result does not depend on it.
  std::vector<double> predict(const StateSnapshot& snap, double beta,
                              std::span<const std::vector<double>> indicators, std::size_t days,
                              std::span<const Seed> sub_seeds) const;

  std::size_t simulations() const noexcept { return simulations_.load(); }

 private:
  const MetroTopology* topology_;
  TransitionThresholds thresholds_;
  SimOptions options_;
  mutable std::atomic<std::size_t> simulations_{0};
};

/// Sum of squared differences between mean predicted and observed new-H over
/// the observed window. A window shorter than m + 1 is scored over the days it
/// has (with a warning). `predicted_out`, if given, receives the mean series.
double forward_loss(const ForwardModel& model, const StateSnapshot& snap, double beta,
                    std::span<const double> observed_window,
                    std::span<const std::vector<double>> indicator_window,
                    const InferenceConfig& config, std::span<const Seed> sub_seeds,
                    std::vector<double>* predicted_out = nullptr);

/// Sub-seeds shared by every candidate evaluated on `day` (common random numbers).
std::vector<Seed> replicate_seeds(Seed master, std::int32_t day, std::size_t replicates);

struct BracketStep {
  double lower, estimate, upper;
};

struct BetaDay {
  double beta = 0.0;
  double loss = 0.0;
  std::size_t iterations = 0;
  bool converged = true;
  bool zero_branch = false;
  std::vector<double> predicted;  // mean new-H for days t..t+m at the accepted beta
};

/// One day of the modified binary search. `observed` and `indicators` are
/// whole series indexed from the state's current day `t` (index = t - origin).
BetaDay infer_beta_day(const ForwardModel& model, const SimState& state,
                       std::span<const double> observed, std::span<const std::vector<double>> indicators,
                       std::size_t t, double beta_previous, const InferenceConfig& config,
                       std::vector<BracketStep>* trace = nullptr);

struct BetaSeries {
  std::vector<BetaDay> days;
  std::vector<DailyCounts> canonical;  // the accepted trajectory, one row per day

  std::vector<double> betas() const;
  /// Predicted new-H for each day at its accepted beta (first entry of each window).
  std::vector<double> one_step_predicted() const;
};

/// Chains infer_beta_day over the observed series, advancing `initial` (its
/// seed is the master seed) one day at a time with the accepted beta.
BetaSeries infer_beta_series(const ForwardModel& model, SimState initial, std::span<const double> observed,
                             std::span<const std::vector<double>> indicators, const InferenceConfig& config,
                             bool progress = false);

}  // namespace seirah
