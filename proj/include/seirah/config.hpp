#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "seirah/data_io.hpp"
#include "seirah/inference.hpp"
#include "seirah/scenario.hpp"
#include "seirah/sweep.hpp"

namespace seirah {

/// Parsed and validated run configuration. Field paths in error messages use
/// the JSON key structure, e.g. "network.residence.k" or "regions[2].commuting".
struct RunConfig {
  Scenario scenario;
  double scale = 1.0;
  InferenceConfig inference;

  std::size_t days = 60;
  std::optional<double> beta;  // constant beta for `simulate`
  Date start_date = parse_date("2020-03-01");
  bool node_history = true;

  SweepGrid grid{{0.0, 0.05, 0.1, 0.5}, {0.0, 0.05, 0.1, 0.5}, 1};
  double rmse_threshold = 2.0;

  std::string observed_path;
  std::string indicator_path;
  std::string beta_path;
  std::string out_dir = "out";
  GapPolicy gaps = GapPolicy::kError;

  nlohmann::json source;  // the effective document after overrides
};

/// Parses a config document. Unknown keys and invalid values throw
/// ValidationError naming the field.
RunConfig parse_config(const nlohmann::json& doc);

/// Reads `path` (JSON), applies `overrides` ("a.b.c=value", value parsed as
/// JSON when possible, else taken as a string) and parses the result.
RunConfig load_config(const std::string& path, const std::vector<std::string>& overrides = {});

/// Applies one "a.b[2].c=value" override in place.
void apply_override(nlohmann::json& doc, std::string_view assignment);

/// FNV-1a 64 of the canonical (sorted-key, compact) dump.
std::uint64_t config_hash(const nlohmann::json& doc);

}  // namespace seirah
