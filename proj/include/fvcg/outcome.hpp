#pragma once

#include <algorithm>
#include <vector>

#include "fvcg/types.hpp"

namespace fvcg {

/// Result of one auction round.
///
/// `payments` and `allocation` are indexed by operator and hold zero for
/// non-winners. `winners` is sorted ascending. When `held` is false the
/// auction trigger did not fire and every bidder is allocated its package
/// free of charge.
struct AuctionOutcome
{
  bool                  held = false;
  std::vector<MnoIndex> winners;
  Currency              social_value = 0.0;
  std::vector<Currency> payments;
  std::vector<unsigned> allocation;
  double                fairness = 1.0;

  [[nodiscard]] bool won(MnoIndex m) const
  {
    return std::binary_search(winners.begin(), winners.end(), m);
  }
};

}  // namespace fvcg
