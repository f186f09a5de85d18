#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fvcg/config.hpp"
#include "fvcg/simulation.hpp"

namespace fvcg {

inline constexpr const char *kCsvHeader =
    "auction,seed,policy,fairness,capacity,mno_id,bid,weight,won,payment,revenue,utility,wins,"
    "requests";

/// `auctions` auctions of one seed under the configured built-in policy.
std::vector<AuctionRecord> run_seed(const SimulationConfig &config, std::uint64_t seed,
                                    std::uint64_t auctions);

/// Runs every seed on its own simulation instance, in parallel. Results are
/// returned in the order of `seeds`.
std::vector<std::vector<AuctionRecord>> run_seeds(const SimulationConfig        &config,
                                                  std::span<const std::uint64_t> seeds,
                                                  std::uint64_t                  auctions);

/// Number of trailing auctions averaged for steady-state fairness:
/// the final 10%, at least one.
std::size_t steady_state_window(std::size_t auctions);

/// Mean fairness over the steady-state window; 1 for an empty run.
double steady_state_fairness(std::span<const AuctionRecord> records);

/// One CSV row per operator per auction. `sweep_value` appends the extra
/// column used by sweeps.
void write_csv_rows(std::ostream &out, std::span<const AuctionRecord> records,
                    std::uint64_t seed, PolicyKind policy,
                    std::optional<double> sweep_value = std::nullopt);

struct PolicySummary
{
  PolicyKind          policy = PolicyKind::unweighted;
  std::vector<double> per_seed;  ///< steady-state fairness, in seed order
  double              mean            = 0.0;
  double              stddev          = 0.0;
  double              improvement_pct = 0.0;  ///< relative to the baseline
};

PolicySummary summarize(PolicyKind policy, std::span<const std::vector<AuctionRecord>> runs);

/// Runs the configured policy over every seed and streams the CSV
/// (header included) to `csv`.
PolicySummary run_experiment(const ExperimentConfig &config, std::ostream &csv);

/// Same as run_experiment but writes to config.output. Throws IoError when
/// the file cannot be written.
PolicySummary run_experiment_to_file(const ExperimentConfig &config);

/// Steady-state comparison of several policies on the same seeds. The
/// baseline is the unweighted policy when listed, else the first entry.
std::vector<PolicySummary> compare(const ExperimentConfig &config,
                                   std::span<const PolicyKind> policies);

void print_comparison(std::ostream &out, std::span<const PolicySummary> summaries);

enum class SweepAxis
{
  vote_threshold,
  mno_count,
};

SweepAxis parse_sweep_axis(const std::string &name);

struct SweepPoint
{
  double        value = 0.0;
  PolicySummary summary;
};

/// One experiment per axis value, merged into one CSV with a trailing
/// `sweep_value` column. Values that make the configuration invalid are
/// skipped with a line on `warnings`. Nothing is written for an empty list.
std::vector<SweepPoint> sweep(const ExperimentConfig &config, SweepAxis axis,
                              std::span<const double> values, std::ostream &csv,
                              std::ostream &warnings);

/// Configuration for one sweep point, or ConfigError when invalid.
SimulationConfig sweep_config(const SimulationConfig &base, SweepAxis axis, double value);

}  // namespace fvcg
