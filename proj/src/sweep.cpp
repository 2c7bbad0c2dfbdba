#include "seirah/sweep.hpp"

#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "seirah/error.hpp"

namespace seirah {

void SweepGrid::validate() const {
  if (p_r.empty() || p_w.empty()) throw ParameterError("sweep grid lists must be non-empty");
  for (double p : p_r) {
    if (!(p >= 0.0 && p <= 1.0)) throw ParameterError("sweep p_r values must lie in [0, 1]");
  }
  for (double p : p_w) {
    if (!(p >= 0.0 && p <= 1.0)) throw ParameterError("sweep p_w values must lie in [0, 1]");
  }
  if (seeds_per_cell < 1) throw ParameterError("sweep seeds_per_cell must be >= 1");
}

double rmse(std::span<const double> predicted, std::span<const double> observed) {
  if (predicted.size() != observed.size()) throw ParameterError("rmse: length mismatch");
  if (predicted.empty()) return 0.0;
  double sum = 0.0;
  for (std::size_t i = 0; i < predicted.size(); ++i) {
    const double d = predicted[i] - observed[i];
    sum += d * d;
  }
  return std::sqrt(sum / static_cast<double>(predicted.size()));
}

SweepCell score_cell(const SweepSetup& setup, double p_r, double p_w, std::size_t seed_sets,
                     std::span<const double> observed, std::span<const std::vector<double>> indicators) {
  SweepCell cell{.p_r = p_r, .p_w = p_w};
  for (std::size_t j = 0; j < seed_sets; ++j) {
    Scenario scenario = setup.base;
    scenario.residence.p = p_r;
    scenario.work.p = p_w;
    if (j > 0) {
      scenario.topology_seed = derive_seed(setup.base.topology_seed, static_cast<std::uint32_t>(j), 0x7070);
      scenario.master_seed = derive_seed(setup.base.master_seed, static_cast<std::uint32_t>(j), 0x7071);
    }
    const auto topology = scenario.build();
    ForwardModel model(topology, scenario.thresholds, {Execution::kSerial});
    const auto series = infer_beta_series(model, scenario.initial_state(topology), observed, indicators,
                                          setup.inference);
    cell.rmse += rmse(series.one_step_predicted(), observed);
    double beta_sum = 0.0;
    for (const auto& d : series.days) beta_sum += d.beta;
    cell.mean_beta += beta_sum / static_cast<double>(series.days.size());
  }
  cell.rmse /= static_cast<double>(seed_sets);
  cell.mean_beta /= static_cast<double>(seed_sets);
  cell.appropriate = cell.rmse <= setup.rmse_threshold;
  return cell;
}

SweepResult run_sweep(const SweepGrid& grid, const SweepSetup& setup, std::span<const double> observed,
                      std::span<const std::vector<double>> indicators) {
  grid.validate();
  setup.inference.validate();
  SweepResult result;
  result.threshold = setup.rmse_threshold;
  for (double pr : grid.p_r) {
    for (double pw : grid.p_w) result.cells.push_back({.p_r = pr, .p_w = pw});
  }
  const auto cells = static_cast<std::int64_t>(result.cells.size());
  [[maybe_unused]] const int workers = static_cast<int>(std::max<std::size_t>(1, setup.workers));
#pragma omp parallel for schedule(dynamic) num_threads(workers)
  for (std::int64_t c = 0; c < cells; ++c) {
    auto& cell = result.cells[c];
    try {
      cell = score_cell(setup, cell.p_r, cell.p_w, grid.seeds_per_cell, observed, indicators);
    } catch (const std::exception& e) {
      cell.failed = true;
      cell.appropriate = false;
      cell.error = e.what();
    }
  }
  return result;
}

}  // namespace seirah
