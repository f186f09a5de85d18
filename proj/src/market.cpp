#include "fvcg/market.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "fvcg/error.hpp"

namespace fvcg {

void validate(std::span<const MnoConfig> configs, const ValuationRange *valuation)
{
  if (configs.empty())
  {
    throw ConfigError("at least one MNO is required");
  }

  double share_sum = 0.0;
  for (std::size_t m = 0; m < configs.size(); ++m)
  {
    const auto &c  = configs[m];
    auto        id = std::to_string(m + 1);
    if (!(c.market_share > 0.0 && c.market_share <= 1.0))
    {
      throw ConfigError("mno " + id + ": market_share must lie in (0, 1]");
    }
    if (!(c.revenue_rate > 0.0))
    {
      throw ConfigError("mno " + id + ": revenue_rate must be positive");
    }
    if (!(c.demand_rate >= 0.0) || !std::isfinite(c.demand_rate))
    {
      throw ConfigError("mno " + id + ": demand_rate must be non-negative");
    }
    if (!(c.participation_prob >= 0.0 && c.participation_prob <= 1.0))
    {
      throw ConfigError("mno " + id + ": participation_prob must lie in [0, 1]");
    }
    if (valuation != nullptr && c.revenue_rate + kTolerance < valuation->high * c.market_share)
    {
      throw ConfigError("mno " + id +
                        ": revenue_rate must be at least valuation.high * market_share");
    }
    share_sum += c.market_share;
  }

  if (std::abs(share_sum - 1.0) > kTolerance)
  {
    throw ConfigError("market shares must sum to 1");
  }

  if (valuation != nullptr && !(valuation->low >= 0.0 && valuation->low <= valuation->high))
  {
    throw ConfigError("valuation range must satisfy 0 <= low <= high");
  }
}

std::vector<MnoConfig> graded_share_mnos(std::size_t count, const MnoConfig &prototype)
{
  std::vector<MnoConfig> out(count, prototype);
  // Sum of M..2M-1.
  double const total = static_cast<double>(count * (3 * count - 1)) / 2.0;
  for (std::size_t m = 0; m < count; ++m)
  {
    out[m].market_share = static_cast<double>(2 * count - 1 - m) / total;
  }
  return out;
}

std::vector<MnoIndex> RoundBids::bidders() const
{
  std::vector<MnoIndex> out;
  for (MnoIndex m = 0; m < size(); ++m)
  {
    if (is_bidder(m))
    {
      out.push_back(m);
    }
  }
  return out;
}

RoundBids generate_round(std::span<const MnoConfig> configs, const ValuationRange &valuation,
                         unsigned num_blocks, std::mt19937_64 &rng)
{
  RoundBids round(configs.size());
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  for (std::size_t m = 0; m < configs.size(); ++m)
  {
    auto const &cfg = configs[m];

    // Fixed draw order: participation, package, per-block valuation.
    bool const participates = unit(rng) < cfg.participation_prob;

    unsigned package = 0;
    if (cfg.demand_rate > 0.0)
    {
      std::poisson_distribution<unsigned> poisson(cfg.demand_rate);
      package = std::clamp(poisson(rng), 1u, std::max(num_blocks, 1u));
    }
    else
    {
      (void)unit(rng);
    }

    Currency const per_block =
        (valuation.low + (valuation.high - valuation.low) * unit(rng)) * cfg.market_share;

    if (!participates || package == 0 || num_blocks == 0 || per_block <= 0.0)
    {
      continue;
    }

    round.packages[m] = package;
    round.values[m]   = per_block * package;
    round.bids[m]     = round.values[m];
  }

  return round;
}

Currency revenue(unsigned blocks, Currency rate)
{
  return static_cast<Currency>(blocks) * rate;
}

std::vector<MnoLedger> settle(std::vector<MnoLedger> ledgers, const AuctionOutcome &outcome,
                              const RoundBids &round, std::span<const MnoConfig> configs)
{
  if (ledgers.size() != round.size() || configs.size() != round.size())
  {
    throw ContractViolation("settle: ledger, round and config sizes differ");
  }
  for (auto m : outcome.winners)
  {
    if (m >= round.size() || !round.is_bidder(m))
    {
      throw ContractViolation("settle: winner " + std::to_string(m + 1) + " did not bid");
    }
  }

  for (MnoIndex m = 0; m < round.size(); ++m)
  {
    auto &ledger        = ledgers[m];
    ledger.last_bid     = round.bids[m];
    ledger.last_package = round.packages[m];
    ledger.last_value   = round.values[m];

    if (!round.is_bidder(m))
    {
      continue;
    }
    ++ledger.requests;

    if (outcome.won(m))
    {
      ++ledger.wins;
      Currency const payment = m < outcome.payments.size() ? outcome.payments[m] : 0.0;
      ledger.cumulative_utility += revenue(round.packages[m], configs[m].revenue_rate) - payment;
    }
  }

  return ledgers;
}

}  // namespace fvcg
