#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace fvcg {

struct FlightConfig
{
  double altitude_m     = 200.0;
  double radius_m       = 100.0;
  double speed_mps      = 10.0;
  double sensing_angle  = 1.5707963267948966;  ///< rad
  double decision_angle = 0.5235987755982988;  ///< rad
};

struct SensingConfig
{
  double       total_bandwidth_mhz = 100.0;
  double       block_bandwidth_mhz = 5.0;
  double       energy_threshold    = 1.008;
  unsigned     vote_threshold      = 3;
  unsigned     uavs_per_mno        = 1;
  double       snr_db              = 18.0;
  double       noise_power         = 1.0;
  double       activity_prob       = 0.25;  ///< per-block incumbent occupancy per frame
  bool         perfect_sensing     = true;
  FlightConfig flight;

  [[nodiscard]] unsigned num_blocks() const;
};

/// Throws ConfigError when the block partition, thresholds or flight angles
/// are inconsistent for `num_mnos` operators.
void validate(const SensingConfig &config, std::size_t num_mnos);

struct Fusion
{
  std::vector<bool> occupied;
  std::vector<bool> vacancy;
  unsigned          capacity = 0;
};

struct SensingSnapshot
{
  std::vector<bool>     ground_truth;  ///< incumbent present
  std::vector<unsigned> votes;         ///< occupied votes per block
  std::vector<bool>     occupied;
  std::vector<bool>     vacancy;
  unsigned              capacity = 0;

  bool operator==(const SensingSnapshot &) const = default;
};

struct SensingTiming
{
  double sensing_s;
  double transmission_s;
};

std::vector<bool> simulate_incumbent(std::size_t num_blocks, double activity_prob,
                                     std::mt19937_64 &rng);

/// Received energy |x|^2 where x is noise alone on a vacant block and
/// gain * signal + noise on an occupied one.
double sense_energy(bool occupied, std::complex<double> gain, std::complex<double> signal,
                    std::complex<double> noise);

/// True is an "occupied" vote. Energy equal to the threshold votes occupied.
bool local_decision(double energy, double threshold);

/// n-out-of-K fusion: a block is occupied when at least `vote_threshold`
/// UAVs voted occupied.
Fusion fuse(std::span<const unsigned> votes, unsigned vote_threshold, unsigned total_uavs);

SensingTiming timing(double radius_m, double speed_mps, double sensing_angle,
                     double decision_angle);

/// Frame-level cooperative sensing: incumbent activity, per-UAV energy
/// detection over a flat Rayleigh channel, and REM fusion.
class CooperativeSensor
{
public:
  CooperativeSensor(SensingConfig config, std::size_t num_mnos);

  SensingSnapshot sense_frame(std::mt19937_64 &rng) const;

  [[nodiscard]] unsigned total_uavs() const { return total_uavs_; }
  [[nodiscard]] const SensingConfig &config() const { return config_; }

private:
  SensingConfig config_;
  unsigned      total_uavs_;
};

}  // namespace fvcg
