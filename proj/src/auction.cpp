#include "fvcg/auction.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "fvcg/error.hpp"
#include "fvcg/fairness.hpp"

namespace fvcg {

std::vector<Currency> apply_weights(std::span<const Currency> bids, std::span<const double> weights)
{
  if (bids.size() != weights.size())
  {
    throw ContractViolation("apply_weights: bid and weight vectors differ in length");
  }
  std::vector<Currency> out(bids.size());
  for (std::size_t m = 0; m < bids.size(); ++m)
  {
    if (!(weights[m] > 0.0))
    {
      throw ContractViolation("apply_weights: weight of mno " + std::to_string(m + 1) +
                              " is not positive");
    }
    out[m] = bids[m] * weights[m];
  }
  return out;
}

bool should_hold_auction(std::span<const unsigned> packages, unsigned capacity)
{
  std::uint64_t const requested =
      std::accumulate(packages.begin(), packages.end(), std::uint64_t{0});
  return requested > capacity;
}

namespace {

struct Cell
{
  Currency value = 0.0;
  unsigned count = 0;
  bool     take  = false;
};

}  // namespace

WinnerSet determine_winners(const WeightedRound &round, std::optional<MnoIndex> excluded)
{
  if (round.weighted_bids.size() != round.packages.size())
  {
    throw ContractViolation("determine_winners: bid and package vectors differ in length");
  }

  std::vector<MnoIndex> items;
  for (MnoIndex m = 0; m < round.packages.size(); ++m)
  {
    if (round.packages[m] > 0 && round.packages[m] <= round.capacity && m != excluded)
    {
      items.push_back(m);
    }
  }

  // table[i][c]: best subset of items[i..] within capacity c. Filling from
  // the highest id down means a tie between taking and skipping items[i]
  // resolves to taking it, which yields the lexicographically smallest set.
  std::size_t const                 width = round.capacity + 1;
  std::vector<std::vector<Cell>>    table(items.size() + 1, std::vector<Cell>(width));
  for (std::size_t i = items.size(); i-- > 0;)
  {
    auto const  m      = items[i];
    auto const &next   = table[i + 1];
    auto       &cur    = table[i];
    auto const  weight = round.packages[m];
    for (std::size_t c = 0; c < width; ++c)
    {
      cur[c] = next[c];
      cur[c].take = false;
      if (weight > c)
      {
        continue;
      }
      Currency const with  = next[c - weight].value + round.weighted_bids[m];
      unsigned const count = next[c - weight].count + 1;
      bool const     better =
          with > cur[c].value + kTolerance ||
          (with >= cur[c].value - kTolerance && count >= cur[c].count);
      if (better)
      {
        cur[c] = Cell{with, count, true};
      }
    }
  }

  WinnerSet   out;
  std::size_t c = round.capacity;
  for (std::size_t i = 0; i < items.size(); ++i)
  {
    if (table[i][c].take)
    {
      out.winners.push_back(items[i]);
      out.social_value += round.weighted_bids[items[i]];
      c -= round.packages[items[i]];
    }
  }
  return out;
}

Currency vcg_payment(MnoIndex winner, const WeightedRound &round, const WinnerSet &chosen)
{
  if (!std::binary_search(chosen.winners.begin(), chosen.winners.end(), winner))
  {
    throw ContractViolation("vcg_payment: mno " + std::to_string(winner + 1) +
                            " is not a winner");
  }
  Currency const without_winner = determine_winners(round, winner).social_value;
  Currency const others_value   = chosen.social_value - round.weighted_bids[winner];
  return std::max(0.0, without_winner - others_value);
}

AuctionOutcome run_auction(const RoundBids &round, std::span<const double> weights,
                           const SensingSnapshot &snapshot, std::span<const MnoLedger> ledgers)
{
  auto const mnos = round.size();
  if (ledgers.size() != mnos)
  {
    throw ContractViolation("run_auction: ledger count differs from bidder count");
  }

  AuctionOutcome out;
  out.payments.assign(mnos, 0.0);
  out.allocation.assign(mnos, 0);

  auto weighted = apply_weights(round.bids, weights);
  out.held      = should_hold_auction(round.packages, snapshot.capacity);

  if (!out.held)
  {
    out.winners = round.bidders();
    for (auto m : out.winners)
    {
      out.allocation[m] = round.packages[m];
      out.social_value += weighted[m];
    }
  }
  else
  {
    WeightedRound const wr{std::move(weighted), round.packages, snapshot.capacity};
    auto                chosen = determine_winners(wr);
    for (auto m : chosen.winners)
    {
      out.allocation[m] = round.packages[m];
      out.payments[m]   = vcg_payment(m, wr, chosen);
    }
    out.winners      = std::move(chosen.winners);
    out.social_value = chosen.social_value;
  }

  std::vector<MnoLedger> after(ledgers.begin(), ledgers.end());
  for (MnoIndex m = 0; m < mnos; ++m)
  {
    if (round.is_bidder(m))
    {
      ++after[m].requests;
      after[m].wins += out.won(m) ? 1 : 0;
    }
  }
  out.fairness = jain_fairness(after);
  return out;
}

}  // namespace fvcg
