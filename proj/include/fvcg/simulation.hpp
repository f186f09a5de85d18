#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "fvcg/auction.hpp"
#include "fvcg/config.hpp"
#include "fvcg/fairness.hpp"
#include "fvcg/market.hpp"
#include "fvcg/sensing.hpp"

namespace fvcg {

/// Everything that happened in one auction.
struct AuctionRecord
{
  std::uint64_t          auction = 0;
  RoundBids              round;
  SensingSnapshot        snapshot;
  WeightVector           weights;
  AuctionOutcome         outcome;
  std::vector<Currency>  revenues;
  std::vector<MnoLedger> ledgers;  ///< after settlement
};

/// One seeded run of the repeated auction: sense, bid, weight, auction,
/// settle. Market demand and sensing draw from independent streams, so
/// changing the sensing setup leaves the bid sequence untouched.
class Simulation
{
public:
  Simulation(SimulationConfig config, std::uint64_t seed);

  /// 1-based index of the pending auction.
  [[nodiscard]] std::uint64_t auction() const { return auction_; }

  [[nodiscard]] const SimulationConfig      &config() const { return config_; }
  [[nodiscard]] const RoundBids             &pending_round() const { return round_; }
  [[nodiscard]] const SensingSnapshot       &pending_snapshot() const { return snapshot_; }
  [[nodiscard]] const std::vector<MnoLedger> &ledgers() const { return ledgers_; }
  [[nodiscard]] const WeightVector          &last_weights() const { return weights_; }

  /// Weights the configured built-in policy would use for the pending auction.
  [[nodiscard]] WeightVector policy_weights() const;

  /// Runs the pending auction with the given weights and prepares the next.
  AuctionRecord step(std::span<const double> weights);

  AuctionRecord step_with_policy() { return step(policy_weights()); }

private:
  void prepare_round();

  SimulationConfig       config_;
  CooperativeSensor      sensor_;
  std::mt19937_64        market_rng_;
  std::mt19937_64        sensing_rng_;
  std::uint64_t          auction_ = 1;
  RoundBids              round_;
  SensingSnapshot        snapshot_;
  std::vector<MnoLedger> ledgers_;
  WeightVector           weights_;
};

}  // namespace fvcg
