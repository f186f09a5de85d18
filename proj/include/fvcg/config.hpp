#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "fvcg/fairness.hpp"
#include "fvcg/market.hpp"
#include "fvcg/sensing.hpp"

namespace fvcg {

/// Everything one simulation instance needs.
struct SimulationConfig
{
  std::vector<MnoConfig> mnos = graded_share_mnos(5, MnoConfig{});
  ValuationRange         valuation;
  SensingConfig          sensing;
  WeightPolicy           policy;
  std::uint64_t          episode_length = 2000;

  [[nodiscard]] std::vector<double> shares() const;
};

void validate(const SimulationConfig &config);

struct ExperimentConfig
{
  SimulationConfig           simulation;
  std::uint64_t              auctions = 2000;
  std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  std::string                output = "metrics.csv";
};

void validate(const ExperimentConfig &config);

/// JSON mapping. Parsing starts from the defaults, so any subset of keys is
/// accepted; unknown keys are rejected with ConfigError.
///
/// `num_mnos` is an input-only shortcut: when present and the `mnos` list is
/// missing or of another length, operators are regenerated with graded
/// shares (see graded_share_mnos) from the `mno_defaults` prototype.
nlohmann::json   to_json(const SimulationConfig &config);
SimulationConfig simulation_from_json(const nlohmann::json &j);
nlohmann::json   to_json(const ExperimentConfig &config);
ExperimentConfig experiment_from_json(const nlohmann::json &j);

/// Applies a JSON merge patch on top of an existing configuration.
SimulationConfig with_overrides(const SimulationConfig &base, const nlohmann::json &patch);

ExperimentConfig load_experiment_config(const std::filesystem::path &path);

}  // namespace fvcg
