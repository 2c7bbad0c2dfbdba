#include "seirah/inference.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <spdlog/spdlog.h>

#include "seirah/error.hpp"

namespace seirah {

void InferenceConfig::validate() const {
  if (!(epsilon > 0.0)) throw ParameterError("inference epsilon must be > 0");
  if (replicates < 1) throw ParameterError("inference replicates must be >= 1");
  if (!(beta_prior >= 0.0 && beta_prior <= 1.0)) throw ParameterError("inference beta_prior must lie in [0, 1]");
  if (max_iterations < 1) throw ParameterError("inference max_iterations must be >= 1");
}

std::vector<double> ForwardModel::predict(const StateSnapshot& snap, double beta,
                                          std::span<const std::vector<double>> indicators, std::size_t days,
                                          std::span<const Seed> sub_seeds) const {
  if (indicators.size() < days) throw ParameterError("indicator window shorter than the forward horizon");
  const auto reps = static_cast<std::int64_t>(sub_seeds.size());
  std::vector<std::vector<double>> per_replicate(sub_seeds.size(), std::vector<double>(days, 0.0));
  SimOptions inner = options_;
  // Replicates carry the parallelism; the day kernels run serially inside them.
  if (reps > 1) inner.execution = Execution::kSerial;

#pragma omp parallel for schedule(dynamic) if (reps > 1 && options_.execution == Execution::kParallel)
  for (std::int64_t r = 0; r < reps; ++r) {
    SimState state = restore(snap, *topology_);
    state.reseed(sub_seeds[r]);
    for (std::size_t d = 0; d < days; ++d) {
      const auto counts = simulate_day(state, *topology_, beta, indicators[d], thresholds_, inner);
      per_replicate[r][d] = static_cast<double>(counts.new_h);
    }
  }
  simulations_ += sub_seeds.size();

  std::vector<double> mean(days, 0.0);
  for (const auto& series : per_replicate) {
    for (std::size_t d = 0; d < days; ++d) mean[d] += series[d];
  }
  for (auto& m : mean) m /= static_cast<double>(std::max<std::size_t>(1, sub_seeds.size()));
  return mean;
}

double forward_loss(const ForwardModel& model, const StateSnapshot& snap, double beta,
                    std::span<const double> observed_window,
                    std::span<const std::vector<double>> indicator_window, const InferenceConfig& config,
                    std::span<const Seed> sub_seeds, std::vector<double>* predicted_out) {
  std::size_t days = config.window + 1;
  if (observed_window.size() < days) {
    spdlog::debug("loss window truncated to {} of {} days", observed_window.size(), days);
    days = observed_window.size();
  }
  auto predicted = model.predict(snap, beta, indicator_window, days, sub_seeds);
  double loss = 0.0;
  for (std::size_t i = 0; i < days; ++i) {
    const double diff = predicted[i] - observed_window[i];
    loss += diff * diff;
  }
  if (predicted_out) *predicted_out = std::move(predicted);
  return loss;
}

std::vector<Seed> replicate_seeds(Seed master, std::int32_t day, std::size_t replicates) {
  std::vector<Seed> seeds(replicates);
  for (std::size_t r = 0; r < replicates; ++r) {
    seeds[r] = derive_seed(master, static_cast<std::uint32_t>(day), static_cast<std::uint32_t>(r + 1));
  }
  return seeds;
}

BetaDay infer_beta_day(const ForwardModel& model, const SimState& state, std::span<const double> observed,
                       std::span<const std::vector<double>> indicators, std::size_t t, double beta_previous,
                       const InferenceConfig& config, std::vector<BracketStep>* trace) {
  config.validate();
  if (!(beta_previous >= 0.0 && beta_previous <= 1.0)) {
    throw ParameterError("previous beta must lie in [0, 1]");
  }
  if (t >= observed.size()) throw ParameterError("inference day beyond the observed series");

  const std::size_t wanted = config.window + 1;
  const std::size_t available = std::min(wanted, observed.size() - t);
  if (available < wanted) {
    spdlog::debug("day {}: loss window truncated to {} of {} days at the end of the observed series", t,
                 available, wanted);
  }
  const auto obs = observed.subspan(t, available);

  BetaDay out;
  if (state.infectious() == 0) {
    // Nothing can transmit or progress into H: beta is irrelevant.
    out.zero_branch = true;
    out.predicted.assign(available, 0.0);
    for (double h : obs) out.loss += h * h;
    return out;
  }

  // Indicators beyond the supplied series repeat the last known day.
  std::vector<std::vector<double>> ind(available);
  for (std::size_t i = 0; i < available; ++i) {
    ind[i] = indicators[std::min(t + i, indicators.size() - 1)];
  }

  const auto snap = snapshot(state);
  const auto seeds = replicate_seeds(state.seed(), state.day(), config.replicates);
  auto loss_at = [&](double beta) { return forward_loss(model, snap, beta, obs, ind, config, seeds); };

  double lower = 0.0, upper = 1.0, estimate = beta_previous;
  double loss_lower = loss_at(lower);
  double loss_upper = loss_at(upper);
  std::size_t iterations = 0;
  while (upper - lower > config.epsilon && iterations < config.max_iterations) {
    const double loss_estimate =
        estimate == lower ? loss_lower : (estimate == upper ? loss_upper : loss_at(estimate));
    bool replace_lower;
    if (loss_lower != loss_upper) {
      replace_lower = loss_lower > loss_upper;
    } else {
      replace_lower = (estimate - lower) >= (upper - estimate);
    }
    if (replace_lower) {
      lower = estimate;
      loss_lower = loss_estimate;
    } else {
      upper = estimate;
      loss_upper = loss_estimate;
    }
    estimate = 0.5 * (lower + upper);
    ++iterations;
    if (trace) trace->push_back({lower, estimate, upper});
  }

  out.beta = std::clamp(estimate, 0.0, 1.0);
  out.iterations = iterations;
  out.converged = upper - lower <= config.epsilon;
  if (!out.converged) {
    spdlog::warn("day {}: bracket [{}, {}] still wider than {} after {} iterations", t, lower, upper,
                 config.epsilon, iterations);
  }
  out.loss = forward_loss(model, snap, out.beta, obs, ind, config, seeds, &out.predicted);
  return out;
}

std::vector<double> BetaSeries::betas() const {
  std::vector<double> out;
  out.reserve(days.size());
  for (const auto& d : days) out.push_back(d.beta);
  return out;
}

std::vector<double> BetaSeries::one_step_predicted() const {
  std::vector<double> out;
  out.reserve(days.size());
  for (const auto& d : days) out.push_back(d.predicted.empty() ? 0.0 : d.predicted.front());
  return out;
}

BetaSeries infer_beta_series(const ForwardModel& model, SimState initial, std::span<const double> observed,
                             std::span<const std::vector<double>> indicators, const InferenceConfig& config,
                             bool progress) {
  config.validate();
  if (observed.empty()) throw ParameterError("observed series is empty");
  if (indicators.size() < observed.size()) throw ParameterError("indicator series shorter than observed series");
  BetaSeries series;
  double previous = config.beta_prior;
  SimState& state = initial;
  for (std::size_t t = 0; t < observed.size(); ++t) {
    auto day = infer_beta_day(model, state, observed, indicators, t, previous, config);
    series.canonical.push_back(simulate_day(state, model.topology(), day.beta, indicators[t],
                                            model.thresholds(), model.options()));
    if (progress) {
      spdlog::info("day {:>4}: beta={:.4f} loss={:.3f} iters={} H_obs={} H_pred={:.2f}", t, day.beta, day.loss,
                   day.iterations, observed[t], day.predicted.empty() ? 0.0 : day.predicted.front());
    }
    previous = day.beta;
    series.days.push_back(std::move(day));
  }
  return series;
}

}  // namespace seirah
