#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "seirah/inference.hpp"
#include "seirah/scenario.hpp"

namespace seirah {

struct SweepGrid {
  std::vector<double> p_r;
  std::vector<double> p_w;
  std::size_t seeds_per_cell = 1;

  void validate() const;
};

struct SweepCell {
  double p_r = 0.0;
  double p_w = 0.0;
  double rmse = 0.0;
  double mean_beta = 0.0;
  bool appropriate = false;
  bool failed = false;
  std::string error;
};

struct SweepResult {
  double threshold = 0.0;
  std::vector<SweepCell> cells;  // row-major: p_r outer, p_w inner
};

struct SweepSetup {
  Scenario base;  // residence.p / work.p are overridden per cell
  InferenceConfig inference;
  double rmse_threshold = 1.0;
  std::size_t workers = 1;
};

double rmse(std::span<const double> predicted, std::span<const double> observed);

/// Scores one (p_r, p_w) pair with the given seed set: mean over seed sets of
/// the RMSE between one-step-ahead predicted and observed new-H, plus the
/// mean inferred beta.
SweepCell score_cell(const SweepSetup& setup, double p_r, double p_w, std::size_t seed_sets,
                     std::span<const double> observed, std::span<const std::vector<double>> indicators);

/// Every cell of the grid, run on a pool of `setup.workers` threads. A cell
/// that throws is recorded as failed.
SweepResult run_sweep(const SweepGrid& grid, const SweepSetup& setup, std::span<const double> observed,
                      std::span<const std::vector<double>> indicators);

}  // namespace seirah
