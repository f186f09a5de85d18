#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "fvcg/outcome.hpp"
#include "fvcg/types.hpp"

namespace fvcg {

struct MnoConfig
{
  double   market_share       = 0.2;
  Currency revenue_rate       = 10.0;  ///< selling price per block per round
  double   demand_rate        = 6.0;   ///< mean requested blocks per round
  double   participation_prob = 1.0;
};

/// Per-block valuation range before market-share scaling.
struct ValuationRange
{
  Currency low  = 8.0;
  Currency high = 10.0;
};

/// Checks share normalisation, rates and probabilities. When `valuation` is
/// given, also requires every operator's revenue rate to cover its highest
/// possible per-block value so that cumulative utility never decreases.
void validate(std::span<const MnoConfig> configs, const ValuationRange *valuation = nullptr);

/// Operators with shares proportional to 2M-1, 2M-2, ..., M: strictly
/// decreasing, with the largest operator holding about twice the share of
/// the smallest.
std::vector<MnoConfig> graded_share_mnos(std::size_t count, const MnoConfig &prototype);

struct MnoLedger
{
  std::uint64_t requests           = 0;
  std::uint64_t wins               = 0;
  Currency      cumulative_utility = 0.0;
  Currency      last_bid           = 0.0;
  unsigned      last_package       = 0;
  Currency      last_value         = 0.0;

  /// Win/request ratio, 0 for an operator that never requested.
  [[nodiscard]] double win_ratio() const
  {
    return requests == 0 ? 0.0 : static_cast<double>(wins) / static_cast<double>(requests);
  }
};

/// One round's demand. Absent operators have bid, package and value all 0.
struct RoundBids
{
  std::vector<Currency> bids;
  std::vector<unsigned> packages;
  std::vector<Currency> values;

  RoundBids() = default;
  explicit RoundBids(std::size_t mnos)
    : bids(mnos, 0.0)
    , packages(mnos, 0)
    , values(mnos, 0.0)
  {}

  [[nodiscard]] std::size_t size() const { return bids.size(); }
  [[nodiscard]] bool        is_bidder(MnoIndex m) const { return packages[m] > 0; }
  [[nodiscard]] std::vector<MnoIndex> bidders() const;

  bool operator==(const RoundBids &) const = default;
};

/// Draws one round of demand. Every operator consumes the same number of
/// random draws regardless of outcome, so the stream stays aligned.
RoundBids generate_round(std::span<const MnoConfig> configs, const ValuationRange &valuation,
                         unsigned num_blocks, std::mt19937_64 &rng);

Currency revenue(unsigned blocks, Currency rate);

/// Applies one round's outcome to the ledgers and returns the updated copy.
/// Throws ContractViolation if a winner did not bid.
std::vector<MnoLedger> settle(std::vector<MnoLedger> ledgers, const AuctionOutcome &outcome,
                              const RoundBids &round, std::span<const MnoConfig> configs);

}  // namespace fvcg
