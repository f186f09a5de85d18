#include <gtest/gtest.h>

#include "fvcg/config.hpp"
#include "fvcg/error.hpp"

using namespace fvcg;
using nlohmann::json;

TEST(ExperimentConfigDefaults, MatchDocumentedDefaults)
{
  ExperimentConfig const cfg;
  auto const            &sim = cfg.simulation;
  EXPECT_EQ(sim.mnos.size(), 5u);
  EXPECT_EQ(sim.sensing.uavs_per_mno, 1u);
  EXPECT_EQ(sim.sensing.vote_threshold, 3u);
  EXPECT_DOUBLE_EQ(sim.sensing.total_bandwidth_mhz, 100.0);
  EXPECT_DOUBLE_EQ(sim.sensing.block_bandwidth_mhz, 5.0);
  EXPECT_EQ(sim.sensing.num_blocks(), 20u);
  EXPECT_DOUBLE_EQ(sim.sensing.snr_db, 18.0);
  EXPECT_DOUBLE_EQ(sim.sensing.energy_threshold, 1.008);
  EXPECT_EQ(sim.policy.update_period, 10u);
  EXPECT_DOUBLE_EQ(sim.policy.weight_floor, 0.05);
  EXPECT_EQ(cfg.auctions, 2000u);
  EXPECT_FALSE(cfg.seeds.empty());
  EXPECT_NO_THROW(validate(cfg));
}

TEST(ExperimentConfigJson, FileLoadsWithCommentsAndShortcuts)
{
  auto const cfg = load_experiment_config(FVCG_TEST_DATA_DIR "/sample_config.json");
  EXPECT_EQ(cfg.simulation.policy.kind, PolicyKind::mswga);
  EXPECT_EQ(cfg.auctions, 300u);
  EXPECT_EQ(cfg.seeds, (std::vector<std::uint64_t>{3, 1, 2}));
  EXPECT_EQ(cfg.simulation.mnos.size(), 5u);
  EXPECT_NO_THROW(validate(cfg));
}

TEST(ExperimentConfigJson, RoundTripsThroughJson)
{
  ExperimentConfig cfg;
  cfg.simulation.policy.kind           = PolicyKind::utility;
  cfg.simulation.sensing.snr_db        = 11.5;
  cfg.simulation.mnos[2].demand_rate   = 3.25;
  cfg.seeds                            = {9, 8};
  auto const back = experiment_from_json(to_json(cfg));
  EXPECT_EQ(to_json(back), to_json(cfg));
}

TEST(ExperimentConfigJson, RejectsUnknownKeysAndBadValues)
{
  EXPECT_THROW(experiment_from_json(json{{"sensing", {{"snr", 3}}}}), ConfigError);
  EXPECT_THROW(experiment_from_json(json{{"policy", {{"kind", "greedy"}}}}), ConfigError);
  EXPECT_THROW(experiment_from_json(json{{"auctions", "many"}}), ConfigError);
  EXPECT_THROW(load_experiment_config("/nonexistent/config.json"), ConfigError);

  auto cfg  = experiment_from_json(json{{"seeds", json::array()}});
  EXPECT_THROW(validate(cfg), ConfigError);
}

TEST(SimulationOverrides, NumMnosRegeneratesOperators)
{
  SimulationConfig const base;
  auto const three = with_overrides(base, json{{"num_mnos", 3}});
  EXPECT_EQ(three.mnos.size(), 3u);
  EXPECT_NO_THROW(validate(three));

  auto const patched = with_overrides(base, json{{"sensing", {{"vote_threshold", 5}}}});
  EXPECT_EQ(patched.sensing.vote_threshold, 5u);
  EXPECT_EQ(patched.sensing.snr_db, base.sensing.snr_db);
  EXPECT_EQ(patched.mnos.size(), 5u);

  EXPECT_THROW(with_overrides(base, json::array()), ConfigError);
}
