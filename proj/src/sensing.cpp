#include "fvcg/sensing.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "fvcg/error.hpp"

namespace fvcg {

unsigned SensingConfig::num_blocks() const
{
  if (!(block_bandwidth_mhz > 0.0))
  {
    return 0;
  }
  return static_cast<unsigned>(std::llround(total_bandwidth_mhz / block_bandwidth_mhz));
}

void validate(const SensingConfig &config, std::size_t num_mnos)
{
  if (!(config.block_bandwidth_mhz > 0.0) || !(config.total_bandwidth_mhz > 0.0))
  {
    throw ConfigError("sensing: bandwidths must be positive");
  }
  double const blocks = config.total_bandwidth_mhz / config.block_bandwidth_mhz;
  if (std::abs(blocks - std::round(blocks)) > 1e-9)
  {
    throw ConfigError("sensing: total bandwidth must be a multiple of the block bandwidth");
  }
  if (!(config.energy_threshold > 0.0))
  {
    throw ConfigError("sensing: energy_threshold must be positive");
  }
  if (config.uavs_per_mno == 0)
  {
    throw ConfigError("sensing: uavs_per_mno must be at least 1");
  }
  auto const total = config.uavs_per_mno * num_mnos;
  if (config.vote_threshold < 1 || config.vote_threshold > total)
  {
    throw ConfigError("sensing: vote_threshold must lie in [1, " + std::to_string(total) + "]");
  }
  if (!(config.noise_power > 0.0))
  {
    throw ConfigError("sensing: noise_power must be positive");
  }
  if (!(config.activity_prob >= 0.0 && config.activity_prob <= 1.0))
  {
    throw ConfigError("sensing: activity_prob must lie in [0, 1]");
  }
  auto const &f = config.flight;
  if (!(f.speed_mps > 0.0))
  {
    throw ConfigError("sensing: flight speed must be positive");
  }
  if (f.sensing_angle < 0.0 || f.decision_angle < 0.0 ||
      !(f.sensing_angle + f.decision_angle < 2.0 * std::numbers::pi))
  {
    throw ConfigError("sensing: sensing_angle + decision_angle must be below 2*pi");
  }
}

std::vector<bool> simulate_incumbent(std::size_t num_blocks, double activity_prob,
                                     std::mt19937_64 &rng)
{
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<bool>                      truth(num_blocks, false);
  for (std::size_t c = 0; c < num_blocks; ++c)
  {
    truth[c] = unit(rng) < activity_prob;
  }
  return truth;
}

double sense_energy(bool occupied, std::complex<double> gain, std::complex<double> signal,
                    std::complex<double> noise)
{
  auto const x = occupied ? gain * signal + noise : noise;
  return std::norm(x);
}

bool local_decision(double energy, double threshold)
{
  if (!(threshold > 0.0))
  {
    throw ContractViolation("local_decision: threshold must be positive");
  }
  return energy >= threshold;
}

Fusion fuse(std::span<const unsigned> votes, unsigned vote_threshold, unsigned total_uavs)
{
  if (vote_threshold < 1 || vote_threshold > total_uavs)
  {
    throw ConfigError("fuse: vote threshold outside [1, K_tot]");
  }

  Fusion out;
  out.occupied.resize(votes.size());
  out.vacancy.resize(votes.size());
  for (std::size_t c = 0; c < votes.size(); ++c)
  {
    if (votes[c] > total_uavs)
    {
      throw ContractViolation("fuse: vote count exceeds number of UAVs");
    }
    out.occupied[c] = votes[c] >= vote_threshold;
    out.vacancy[c]  = !out.occupied[c];
    out.capacity += out.vacancy[c] ? 1u : 0u;
  }
  return out;
}

SensingTiming timing(double radius_m, double speed_mps, double sensing_angle,
                     double decision_angle)
{
  if (!(speed_mps > 0.0))
  {
    throw ConfigError("timing: speed must be positive");
  }
  if (!(sensing_angle + decision_angle < 2.0 * std::numbers::pi))
  {
    throw ConfigError("timing: sensing and decision angles must leave a transmission arc");
  }
  return {radius_m * sensing_angle / speed_mps,
          radius_m * (2.0 * std::numbers::pi - (sensing_angle + decision_angle)) / speed_mps};
}

CooperativeSensor::CooperativeSensor(SensingConfig config, std::size_t num_mnos)
  : config_(config)
  , total_uavs_(static_cast<unsigned>(config.uavs_per_mno * num_mnos))
{
  validate(config_, num_mnos);
}

SensingSnapshot CooperativeSensor::sense_frame(std::mt19937_64 &rng) const
{
  auto const      blocks = config_.num_blocks();
  SensingSnapshot snap;
  snap.ground_truth = simulate_incumbent(blocks, config_.activity_prob, rng);
  snap.votes.assign(blocks, 0);

  if (config_.perfect_sensing)
  {
    for (std::size_t c = 0; c < blocks; ++c)
    {
      snap.votes[c] = snap.ground_truth[c] ? total_uavs_ : 0;
    }
  }
  else
  {
    // Circularly-symmetric complex Gaussian: each component carries half
    // the power.
    double const snr_linear = std::pow(10.0, config_.snr_db / 10.0);
    std::normal_distribution<double> gain_component(
        0.0, std::sqrt(snr_linear * config_.noise_power / 2.0));
    std::normal_distribution<double> noise_component(0.0, std::sqrt(config_.noise_power / 2.0));
    std::complex<double> const       signal{1.0, 0.0};

    for (unsigned k = 0; k < total_uavs_; ++k)
    {
      // Flat across blocks and frozen for the frame.
      std::complex<double> const gain{gain_component(rng), gain_component(rng)};
      for (std::size_t c = 0; c < blocks; ++c)
      {
        std::complex<double> const noise{noise_component(rng), noise_component(rng)};
        double const energy = sense_energy(snap.ground_truth[c], gain, signal, noise);
        snap.votes[c] += local_decision(energy, config_.energy_threshold) ? 1u : 0u;
      }
    }
  }

  auto fused    = fuse(snap.votes, config_.vote_threshold, total_uavs_);
  snap.occupied = std::move(fused.occupied);
  snap.vacancy  = std::move(fused.vacancy);
  snap.capacity = fused.capacity;
  return snap;
}

}  // namespace fvcg
