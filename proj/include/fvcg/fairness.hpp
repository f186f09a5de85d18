#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fvcg/market.hpp"
#include "fvcg/types.hpp"

namespace fvcg {

enum class PolicyKind
{
  unweighted,
  win_per_request,
  utility,
  combined,
  mswga,
  external,
};

std::string_view to_string(PolicyKind kind);

/// Accepts the names printed by to_string. Throws ConfigError otherwise.
PolicyKind parse_policy_kind(std::string_view name);

struct WeightPolicy
{
  PolicyKind kind          = PolicyKind::combined;
  unsigned   update_period = 10;
  double     weight_floor  = 0.05;
};

void validate(const WeightPolicy &policy);

using WeightVector = std::vector<double>;

/// Higher weight for operators that requested often but rarely won:
/// 1 - (1 + wins) / (1 + requests), floored.
double weight_wpr(const MnoLedger &ledger, double floor);

/// 1 - U_m / sum(U), floored. Returns 1 while the total utility is zero.
double weight_utility(std::span<const MnoLedger> ledgers, MnoIndex m, double floor);

/// Product of the two weights above, floored.
double weight_combined(std::span<const MnoLedger> ledgers, MnoIndex m, double floor);

/// Weights refresh at auctions j with (j - 1) mod x == 0 once j > x.
bool is_refresh_step(std::uint64_t auction, unsigned update_period);

/// Market share-based weighted greedy weights. Share coefficients are
/// share / max(share), multiplied into the combined weight at each refresh.
WeightVector mswga_weights(std::span<const MnoLedger> ledgers, std::span<const double> shares,
                           std::uint64_t auction, unsigned update_period,
                           std::span<const double> previous, double floor);

/// Weights for auction `auction` (1-based) under a built-in policy, given
/// the ledgers after auction - 1 and the weights used there.
WeightVector policy_weights(const WeightPolicy &policy, std::span<const MnoLedger> ledgers,
                            std::span<const double> shares, std::uint64_t auction,
                            std::span<const double> previous);

/// Jain index over the win/request ratios. Operators that never requested
/// are left out. Returns 1 when nobody requested yet or every active ratio
/// is zero.
double jain_fairness(std::span<const MnoLedger> ledgers);

/// Jain index of an arbitrary non-negative sample.
double jain_index(std::span<const double> values);

}  // namespace fvcg
