#pragma once

// Exhaustive misreport search for the unit-weight mechanism. Utility is
// quasilinear: true value minus payment when winning, zero otherwise.

#include <algorithm>
#include <vector>

#include "fvcg/auction.hpp"

namespace fvcg::oracle {

inline double unit_weight_utility(const std::vector<double>   &reported,
                                  const std::vector<unsigned> &packages, unsigned capacity,
                                  std::size_t bidder, double true_value)
{
  WeightedRound const wr{reported, packages, capacity};
  auto const          chosen = determine_winners(wr);
  if (!std::binary_search(chosen.winners.begin(), chosen.winners.end(), bidder))
  {
    return 0.0;
  }
  return true_value - vcg_payment(bidder, wr, chosen);
}

/// Largest utility gain any bidder achieves by reporting one of `levels`
/// bid values instead of its true value. Non-positive means truthful.
inline double best_misreport_gain(const std::vector<double>   &values,
                                  const std::vector<unsigned> &packages, unsigned capacity,
                                  const std::vector<double> &levels)
{
  double best = -1e300;
  for (std::size_t i = 0; i < values.size(); ++i)
  {
    double const truthful = unit_weight_utility(values, packages, capacity, i, values[i]);
    auto         reported = values;
    for (double level : levels)
    {
      reported[i] = level;
      best = std::max(best, unit_weight_utility(reported, packages, capacity, i, values[i]) - truthful);
    }
  }
  return best;
}

}  // namespace fvcg::oracle
