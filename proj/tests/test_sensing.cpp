#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "fvcg/error.hpp"
#include "fvcg/sensing.hpp"

using namespace fvcg;

TEST(SenseEnergy, Examples)
{
  EXPECT_DOUBLE_EQ(sense_energy(false, {3.0, 1.0}, {1.0, 0.0}, {0.0, 0.0}), 0.0);
  // h*s + n = 1 + 0i
  EXPECT_DOUBLE_EQ(sense_energy(true, {0.5, 0.0}, {1.0, 0.0}, {0.5, 0.0}), 1.0);
  EXPECT_DOUBLE_EQ(sense_energy(false, {9.0, 9.0}, {1.0, 0.0}, {0.5, 0.0}), 0.25);
}

TEST(LocalDecision, DefaultThreshold)
{
  EXPECT_FALSE(local_decision(0.25, 1.008));
  EXPECT_TRUE(local_decision(1.008, 1.008));
  EXPECT_TRUE(local_decision(2.0, 1.008));
  EXPECT_THROW(local_decision(1.0, 0.0), ContractViolation);
}

TEST(Fuse, ThreeOfFiveVotesIsOccupied)
{
  // Per-UAV votes (1,1,1,0,0) on one block.
  std::vector<unsigned> const votes{1 + 1 + 1 + 0 + 0};
  auto const                  f = fuse(votes, 3, 5);
  EXPECT_TRUE(f.occupied[0]);
  EXPECT_FALSE(f.vacancy[0]);
  EXPECT_EQ(f.capacity, 0u);
}

TEST(Fuse, NoVotesMeansEverythingVacant)
{
  std::vector<unsigned> const votes(20, 0);
  auto const                  f = fuse(votes, 3, 5);
  EXPECT_EQ(f.capacity, 20u);
}

TEST(Fuse, CapacityCountsVacantBlocks)
{
  std::vector<unsigned> votes(20, 0);
  std::fill(votes.begin(), votes.begin() + 8, 4u);
  EXPECT_EQ(fuse(votes, 3, 5).capacity, 12u);
}

TEST(Fuse, RejectsThresholdOutsideRange)
{
  std::vector<unsigned> const votes(4, 0);
  EXPECT_THROW(fuse(votes, 0, 5), ConfigError);
  EXPECT_THROW(fuse(votes, 6, 5), ConfigError);
}

TEST(FuseProperty, MonotoneInThresholdAndBounded)
{
  std::mt19937_64                         rng(5);
  std::uniform_int_distribution<unsigned> vote(0, 7);
  for (int iter = 0; iter < 200; ++iter)
  {
    std::vector<unsigned> votes(20);
    for (auto &v : votes)
    {
      v = vote(rng);
    }
    unsigned prev = 0;
    for (unsigned n = 1; n <= 7; ++n)
    {
      auto const f = fuse(votes, n, 7);
      EXPECT_LE(f.capacity, 20u);
      EXPECT_GE(f.capacity, prev);
      prev = f.capacity;
    }
  }
}

TEST(FuseProperty, OnlyTheVoteSumMatters)
{
  // Shuffling which UAV (and therefore which MNO) cast each vote leaves the
  // per-block sums and hence the fusion unchanged.
  std::mt19937_64 rng(8);
  for (int iter = 0; iter < 100; ++iter)
  {
    std::vector<std::vector<unsigned>> per_uav(5, std::vector<unsigned>(20));
    for (auto &row : per_uav)
    {
      for (auto &v : row)
      {
        v = rng() & 1u;
      }
    }
    auto sums = [](const std::vector<std::vector<unsigned>> &m) {
      std::vector<unsigned> s(20, 0);
      for (auto const &row : m)
      {
        for (std::size_t c = 0; c < 20; ++c)
        {
          s[c] += row[c];
        }
      }
      return s;
    };
    auto shuffled = per_uav;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    auto const a = fuse(sums(per_uav), 3, 5);
    auto const b = fuse(sums(shuffled), 3, 5);
    EXPECT_EQ(a.occupied, b.occupied);
    EXPECT_EQ(a.capacity, b.capacity);
  }
}

TEST(Timing, ClosedForms)
{
  auto const t = timing(100.0, 10.0, std::numbers::pi / 2, 0.0);
  EXPECT_NEAR(t.sensing_s, 5.0 * std::numbers::pi, 1e-12);
  EXPECT_NEAR(t.sensing_s, 15.708, 1e-3);

  EXPECT_DOUBLE_EQ(timing(100.0, 10.0, 0.0, 0.3).sensing_s, 0.0);

  auto const d = timing(100.0, 10.0, std::numbers::pi / 2, std::numbers::pi / 2);
  EXPECT_NEAR(d.transmission_s, 10.0 * std::numbers::pi, 1e-12);
}

TEST(Timing, RejectsNonPositiveSpeed)
{
  EXPECT_THROW(timing(100.0, 0.0, 1.0, 1.0), ConfigError);
  EXPECT_THROW(timing(100.0, -2.0, 1.0, 1.0), ConfigError);
  EXPECT_THROW(timing(100.0, 1.0, 4.0, 3.0), ConfigError);
}

TEST(SimulateIncumbent, ExtremeProbabilities)
{
  std::mt19937_64 rng(1);
  auto const      none = simulate_incumbent(20, 0.0, rng);
  EXPECT_TRUE(std::none_of(none.begin(), none.end(), [](bool b) { return b; }));
  auto const all = simulate_incumbent(20, 1.0, rng);
  EXPECT_TRUE(std::all_of(all.begin(), all.end(), [](bool b) { return b; }));
}

TEST(SimulateIncumbent, SeedReproducesSequence)
{
  std::mt19937_64 a(77);
  std::mt19937_64 b(77);
  for (int frame = 0; frame < 20; ++frame)
  {
    EXPECT_EQ(simulate_incumbent(20, 0.3, a), simulate_incumbent(20, 0.3, b));
  }
}

TEST(SensingConfig, DocumentedDefaults)
{
  SensingConfig const cfg;
  EXPECT_EQ(cfg.num_blocks(), 20u);
  EXPECT_DOUBLE_EQ(cfg.energy_threshold, 1.008);
  EXPECT_EQ(cfg.vote_threshold, 3u);
  EXPECT_EQ(cfg.uavs_per_mno, 1u);
  EXPECT_DOUBLE_EQ(cfg.snr_db, 18.0);
  EXPECT_DOUBLE_EQ(cfg.flight.altitude_m, 200.0);
  EXPECT_DOUBLE_EQ(cfg.flight.radius_m, 100.0);
  EXPECT_NO_THROW(validate(cfg, 5));
}

TEST(SensingConfig, Validation)
{
  SensingConfig cfg;
  cfg.block_bandwidth_mhz = 7.0;
  EXPECT_THROW(validate(cfg, 5), ConfigError);

  cfg                = SensingConfig{};
  cfg.vote_threshold = 6;
  EXPECT_THROW(validate(cfg, 5), ConfigError);
  EXPECT_NO_THROW(validate(cfg, 6));

  cfg                      = SensingConfig{};
  cfg.flight.sensing_angle = 4.0;
  cfg.flight.decision_angle = 2.5;
  EXPECT_THROW(validate(cfg, 5), ConfigError);
}

TEST(CooperativeSensor, PerfectSensingMatchesGroundTruth)
{
  SensingConfig cfg;
  cfg.perfect_sensing = true;
  cfg.activity_prob   = 0.4;
  CooperativeSensor const sensor(cfg, 5);
  std::mt19937_64         rng(12);
  for (int frame = 0; frame < 500; ++frame)
  {
    auto const snap = sensor.sense_frame(rng);
    for (std::size_t c = 0; c < snap.vacancy.size(); ++c)
    {
      EXPECT_EQ(snap.vacancy[c], !snap.ground_truth[c]);
    }
  }

  cfg.activity_prob = 0.0;
  CooperativeSensor const idle(cfg, 5);
  EXPECT_EQ(idle.sense_frame(rng).capacity, 20u);
}

TEST(CooperativeSensor, NoisyPathFalseAlarmRateMatchesExponentialTail)
{
  // With no incumbent, |n|^2 ~ Exp(1/N0): P(vote occupied) = exp(-lambda/N0).
  SensingConfig cfg;
  cfg.perfect_sensing = false;
  cfg.activity_prob   = 0.0;
  CooperativeSensor const sensor(cfg, 5);
  std::mt19937_64         rng(4);
  double                  votes = 0;
  double                  cast  = 0;
  for (int frame = 0; frame < 2000; ++frame)
  {
    auto const snap = sensor.sense_frame(rng);
    for (auto v : snap.votes)
    {
      votes += v;
      cast += 5;
    }
  }
  EXPECT_NEAR(votes / cast, std::exp(-1.008), 0.01);
}

TEST(CooperativeSensor, NoisyInvariants)
{
  SensingConfig cfg;
  cfg.perfect_sensing = false;
  CooperativeSensor const sensor(cfg, 5);
  std::mt19937_64         rng(21);
  for (int frame = 0; frame < 200; ++frame)
  {
    auto const snap = sensor.sense_frame(rng);
    unsigned   vacant = 0;
    for (std::size_t c = 0; c < snap.votes.size(); ++c)
    {
      EXPECT_LE(snap.votes[c], 5u);
      EXPECT_EQ(snap.occupied[c], snap.votes[c] >= 3u);
      EXPECT_EQ(snap.vacancy[c], !snap.occupied[c]);
      vacant += snap.vacancy[c] ? 1 : 0;
    }
    EXPECT_EQ(snap.capacity, vacant);
  }
}
