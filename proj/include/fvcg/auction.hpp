#pragma once

#include <optional>
#include <span>
#include <vector>

#include "fvcg/market.hpp"
#include "fvcg/outcome.hpp"
#include "fvcg/sensing.hpp"
#include "fvcg/types.hpp"

namespace fvcg {

/// Knapsack input: the diagonal of the weight/bid outer product together
/// with package sizes and the sensed capacity. Operators with an empty
/// package do not take part.
struct WeightedRound
{
  std::vector<Currency> weighted_bids;
  std::vector<unsigned> packages;
  unsigned              capacity = 0;
};

struct WinnerSet
{
  std::vector<MnoIndex> winners;  ///< ascending
  Currency              social_value = 0.0;

  bool operator==(const WinnerSet &) const = default;
};

/// Elementwise bid * weight. Every weight must be strictly positive.
std::vector<Currency> apply_weights(std::span<const Currency> bids,
                                    std::span<const double>   weights);

/// Auction trigger: total requested blocks exceed the capacity.
bool should_hold_auction(std::span<const unsigned> packages, unsigned capacity);

/// Exact 0/1 knapsack over capacity.
///
/// Among subsets of equal value (within kTolerance) the one with more
/// winners is preferred, then the lexicographically smallest id set.
/// `excluded` removes one operator from the bidder set, which is how the
/// VCG externality is evaluated.
WinnerSet determine_winners(const WeightedRound &round,
                            std::optional<MnoIndex> excluded = std::nullopt);

/// Clarke payment of `winner`: the best value the others could reach
/// without it, minus what the others obtain in the chosen allocation.
/// Clamped at zero.
Currency vcg_payment(MnoIndex winner, const WeightedRound &round, const WinnerSet &chosen);

/// One full auction round. `ledgers` are the histories before this round
/// and are only used to report the post-round fairness index.
AuctionOutcome run_auction(const RoundBids &round, std::span<const double> weights,
                           const SensingSnapshot &snapshot, std::span<const MnoLedger> ledgers);

}  // namespace fvcg
