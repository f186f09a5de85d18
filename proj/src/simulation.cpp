#include "fvcg/simulation.hpp"

#include "fvcg/error.hpp"

namespace fvcg {

namespace {

std::mt19937_64 make_stream(std::uint64_t seed, std::uint32_t stream)
{
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    stream};
  return std::mt19937_64(seq);
}

}  // namespace

Simulation::Simulation(SimulationConfig config, std::uint64_t seed)
  : config_(std::move(config))
  , sensor_((validate(config_), config_.sensing), config_.mnos.size())
  , market_rng_(make_stream(seed, 1))
  , sensing_rng_(make_stream(seed, 2))
  , ledgers_(config_.mnos.size())
  , weights_(config_.mnos.size(), 1.0)
{
  prepare_round();
}

void Simulation::prepare_round()
{
  snapshot_ = sensor_.sense_frame(sensing_rng_);
  round_    = generate_round(config_.mnos, config_.valuation, config_.sensing.num_blocks(),
                             market_rng_);
}

WeightVector Simulation::policy_weights() const
{
  return fvcg::policy_weights(config_.policy, ledgers_, config_.shares(), auction_, weights_);
}

AuctionRecord Simulation::step(std::span<const double> weights)
{
  if (weights.size() != config_.mnos.size())
  {
    throw ContractViolation("step: expected one weight per MNO");
  }

  AuctionRecord rec;
  rec.auction  = auction_;
  rec.weights  = WeightVector(weights.begin(), weights.end());
  rec.outcome  = run_auction(round_, rec.weights, snapshot_, ledgers_);
  ledgers_     = settle(std::move(ledgers_), rec.outcome, round_, config_.mnos);
  rec.ledgers  = ledgers_;
  rec.revenues.assign(round_.size(), 0.0);
  for (auto m : rec.outcome.winners)
  {
    rec.revenues[m] = revenue(round_.packages[m], config_.mnos[m].revenue_rate);
  }
  rec.round    = std::move(round_);
  rec.snapshot = std::move(snapshot_);

  weights_ = rec.weights;
  ++auction_;
  prepare_round();
  return rec;
}

}  // namespace fvcg
