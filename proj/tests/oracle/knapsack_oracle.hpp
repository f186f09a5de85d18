#pragma once

// Exhaustive winner determination used only as a test oracle. Enumerates all
// 2^M subsets; shares no code with the dynamic program it checks.

#include <cstdint>
#include <optional>
#include <vector>

namespace fvcg::oracle {

struct Choice
{
  std::vector<std::size_t> winners;  // ascending
  double                   value = 0.0;
};

inline bool preferred(const Choice &a, const Choice &b, double tol)
{
  if (a.value > b.value + tol)
  {
    return true;
  }
  if (a.value < b.value - tol)
  {
    return false;
  }
  if (a.winners.size() != b.winners.size())
  {
    return a.winners.size() > b.winners.size();
  }
  return a.winners < b.winners;  // lexicographic on sorted ids
}

inline Choice brute_force(const std::vector<double> &bids, const std::vector<unsigned> &packages,
                          unsigned capacity, std::optional<std::size_t> excluded = std::nullopt,
                          double tol = 1e-9)
{
  auto const n = bids.size();
  Choice     best;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask)
  {
    Choice   cand;
    unsigned used = 0;
    bool     ok   = true;
    for (std::size_t i = 0; i < n && ok; ++i)
    {
      if ((mask >> i) & 1u)
      {
        if (packages[i] == 0 || (excluded && *excluded == i))
        {
          ok = false;
          break;
        }
        used += packages[i];
        cand.value += bids[i];
        cand.winners.push_back(i);
      }
    }
    if (!ok || used > capacity)
    {
      continue;
    }
    if (preferred(cand, best, tol))
    {
      best = cand;
    }
  }
  return best;
}

inline double clarke_payment(const std::vector<double> &bids, const std::vector<unsigned> &packages,
                             unsigned capacity, std::size_t winner)
{
  auto const with    = brute_force(bids, packages, capacity);
  auto const without = brute_force(bids, packages, capacity, winner);
  double const p     = without.value - (with.value - bids[winner]);
  return p < 0.0 ? 0.0 : p;
}

}  // namespace fvcg::oracle
