#include "fvcg/fairness.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <string>

#include "fvcg/error.hpp"

namespace fvcg {

namespace {

constexpr std::array<std::pair<PolicyKind, std::string_view>, 6> kPolicyNames{{
    {PolicyKind::unweighted, "unweighted"},
    {PolicyKind::win_per_request, "win-per-request"},
    {PolicyKind::utility, "utility"},
    {PolicyKind::combined, "combined"},
    {PolicyKind::mswga, "mswga"},
    {PolicyKind::external, "external"},
}};

double clamp_weight(double w, double floor)
{
  return std::clamp(w, floor, 1.0);
}

}  // namespace

std::string_view to_string(PolicyKind kind)
{
  for (auto const &[k, name] : kPolicyNames)
  {
    if (k == kind)
    {
      return name;
    }
  }
  return "unknown";
}

PolicyKind parse_policy_kind(std::string_view name)
{
  for (auto const &[k, n] : kPolicyNames)
  {
    if (n == name)
    {
      return k;
    }
  }
  throw ConfigError("unknown policy '" + std::string(name) + "'");
}

void validate(const WeightPolicy &policy)
{
  if (policy.update_period < 1)
  {
    throw ConfigError("policy: update_period must be at least 1");
  }
  if (!(policy.weight_floor > 0.0 && policy.weight_floor <= 1.0))
  {
    throw ConfigError("policy: weight_floor must lie in (0, 1]");
  }
}

double weight_wpr(const MnoLedger &ledger, double floor)
{
  double const raw = 1.0 - (1.0 + static_cast<double>(ledger.wins)) /
                               (1.0 + static_cast<double>(ledger.requests));
  return clamp_weight(raw, floor);
}

double weight_utility(std::span<const MnoLedger> ledgers, MnoIndex m, double floor)
{
  Currency total = 0.0;
  for (auto const &l : ledgers)
  {
    if (l.cumulative_utility < -kTolerance)
    {
      throw ContractViolation("weight_utility: negative cumulative utility");
    }
    total += std::max(0.0, l.cumulative_utility);
  }
  if (total <= kTolerance)
  {
    return 1.0;
  }
  return clamp_weight(1.0 - std::max(0.0, ledgers[m].cumulative_utility) / total, floor);
}

double weight_combined(std::span<const MnoLedger> ledgers, MnoIndex m, double floor)
{
  return clamp_weight(weight_wpr(ledgers[m], floor) * weight_utility(ledgers, m, floor), floor);
}

bool is_refresh_step(std::uint64_t auction, unsigned update_period)
{
  return auction > update_period && (auction - 1) % update_period == 0;
}

WeightVector mswga_weights(std::span<const MnoLedger> ledgers, std::span<const double> shares,
                           std::uint64_t auction, unsigned update_period,
                           std::span<const double> previous, double floor)
{
  auto const mnos = ledgers.size();
  if (shares.size() != mnos)
  {
    throw ContractViolation("mswga_weights: share vector length differs from ledger count");
  }
  if (auction <= update_period)
  {
    return WeightVector(mnos, 1.0);
  }
  if (!is_refresh_step(auction, update_period))
  {
    if (previous.size() != mnos)
    {
      throw ContractViolation("mswga_weights: previous weights missing");
    }
    return {previous.begin(), previous.end()};
  }

  double const max_share = *std::max_element(shares.begin(), shares.end());
  WeightVector out(mnos);
  for (MnoIndex m = 0; m < mnos; ++m)
  {
    double const coefficient = shares[m] / max_share;
    out[m] = clamp_weight(coefficient * weight_combined(ledgers, m, floor), floor);
  }
  return out;
}

WeightVector policy_weights(const WeightPolicy &policy, std::span<const MnoLedger> ledgers,
                            std::span<const double> shares, std::uint64_t auction,
                            std::span<const double> previous)
{
  auto const mnos = ledgers.size();
  switch (policy.kind)
  {
  case PolicyKind::unweighted:
    return WeightVector(mnos, 1.0);
  case PolicyKind::mswga:
    return mswga_weights(ledgers, shares, auction, policy.update_period, previous,
                         policy.weight_floor);
  case PolicyKind::external:
    throw ConfigError("external weights must be supplied by an agent");
  default:
    break;
  }

  if (auction <= policy.update_period)
  {
    return WeightVector(mnos, 1.0);
  }
  if (!is_refresh_step(auction, policy.update_period))
  {
    return {previous.begin(), previous.end()};
  }

  WeightVector out(mnos);
  for (MnoIndex m = 0; m < mnos; ++m)
  {
    switch (policy.kind)
    {
    case PolicyKind::win_per_request:
      out[m] = weight_wpr(ledgers[m], policy.weight_floor);
      break;
    case PolicyKind::utility:
      out[m] = weight_utility(ledgers, m, policy.weight_floor);
      break;
    default:
      out[m] = weight_combined(ledgers, m, policy.weight_floor);
      break;
    }
  }
  return out;
}

double jain_index(std::span<const double> values)
{
  if (values.empty())
  {
    return 1.0;
  }
  double sum    = 0.0;
  double sum_sq = 0.0;
  for (double v : values)
  {
    sum += v;
    sum_sq += v * v;
  }
  if (sum_sq <= 0.0)
  {
    return 1.0;
  }
  return (sum * sum) / (static_cast<double>(values.size()) * sum_sq);
}

double jain_fairness(std::span<const MnoLedger> ledgers)
{
  std::vector<double> ratios;
  ratios.reserve(ledgers.size());
  for (auto const &l : ledgers)
  {
    if (l.requests > 0)
    {
      ratios.push_back(l.win_ratio());
    }
  }
  return jain_index(ratios);
}

}  // namespace fvcg
