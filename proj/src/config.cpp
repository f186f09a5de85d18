#include "fvcg/config.hpp"

#include <fstream>
#include <initializer_list>
#include <string_view>

#include "fvcg/error.hpp"

namespace fvcg {

using nlohmann::json;

std::vector<double> SimulationConfig::shares() const
{
  std::vector<double> out;
  out.reserve(mnos.size());
  for (auto const &m : mnos)
  {
    out.push_back(m.market_share);
  }
  return out;
}

void validate(const SimulationConfig &config)
{
  validate(config.mnos, &config.valuation);
  validate(config.sensing, config.mnos.size());
  validate(config.policy);
  if (config.episode_length < 1)
  {
    throw ConfigError("episode_length must be at least 1");
  }
}

void validate(const ExperimentConfig &config)
{
  validate(config.simulation);
  if (config.seeds.empty())
  {
    throw ConfigError("at least one seed is required");
  }
}

namespace {

void reject_unknown(const json &j, std::string_view where, std::initializer_list<std::string_view> keys)
{
  if (!j.is_object())
  {
    throw ConfigError(std::string(where) + ": expected an object");
  }
  for (auto const &item : j.items())
  {
    bool known = false;
    for (auto k : keys)
    {
      known = known || item.key() == k;
    }
    if (!known)
    {
      throw ConfigError(std::string(where) + ": unknown key '" + item.key() + "'");
    }
  }
}

template <typename T>
void read(const json &j, const char *key, T &out)
{
  if (!j.contains(key))
  {
    return;
  }
  try
  {
    out = j.at(key).get<T>();
  }
  catch (const json::exception &e)
  {
    throw ConfigError(std::string("invalid value for '") + key + "': " + e.what());
  }
}

json mno_to_json(const MnoConfig &m)
{
  return {{"market_share", m.market_share},
          {"revenue_rate", m.revenue_rate},
          {"demand_rate", m.demand_rate},
          {"participation_prob", m.participation_prob}};
}

MnoConfig mno_from_json(const json &j, MnoConfig m)
{
  reject_unknown(j, "mno", {"market_share", "revenue_rate", "demand_rate", "participation_prob"});
  read(j, "market_share", m.market_share);
  read(j, "revenue_rate", m.revenue_rate);
  read(j, "demand_rate", m.demand_rate);
  read(j, "participation_prob", m.participation_prob);
  return m;
}

}  // namespace

json to_json(const SimulationConfig &config)
{
  json mnos = json::array();
  for (auto const &m : config.mnos)
  {
    mnos.push_back(mno_to_json(m));
  }
  auto const &s = config.sensing;
  auto const &f = s.flight;
  return {
      {"mnos", mnos},
      {"valuation", {{"low", config.valuation.low}, {"high", config.valuation.high}}},
      {"sensing",
       {{"total_bandwidth_mhz", s.total_bandwidth_mhz},
        {"block_bandwidth_mhz", s.block_bandwidth_mhz},
        {"energy_threshold", s.energy_threshold},
        {"vote_threshold", s.vote_threshold},
        {"uavs_per_mno", s.uavs_per_mno},
        {"snr_db", s.snr_db},
        {"noise_power", s.noise_power},
        {"activity_prob", s.activity_prob},
        {"perfect_sensing", s.perfect_sensing},
        {"flight",
         {{"altitude_m", f.altitude_m},
          {"radius_m", f.radius_m},
          {"speed_mps", f.speed_mps},
          {"sensing_angle", f.sensing_angle},
          {"decision_angle", f.decision_angle}}}}},
      {"policy",
       {{"kind", std::string(to_string(config.policy.kind))},
        {"update_period", config.policy.update_period},
        {"weight_floor", config.policy.weight_floor}}},
      {"episode_length", config.episode_length},
  };
}

SimulationConfig simulation_from_json(const json &j)
{
  SimulationConfig out;
  reject_unknown(j, "simulation",
                 {"mnos", "num_mnos", "mno_defaults", "valuation", "sensing", "policy",
                  "episode_length"});

  MnoConfig prototype;
  if (j.contains("mno_defaults"))
  {
    prototype = mno_from_json(j.at("mno_defaults"), prototype);
  }

  if (j.contains("mnos"))
  {
    auto const &list = j.at("mnos");
    if (!list.is_array())
    {
      throw ConfigError("'mnos' must be an array");
    }
    out.mnos.clear();
    for (auto const &item : list)
    {
      out.mnos.push_back(mno_from_json(item, prototype));
    }
  }
  else
  {
    out.mnos = graded_share_mnos(out.mnos.size(), prototype);
  }

  if (j.contains("num_mnos"))
  {
    std::size_t count = 0;
    read(j, "num_mnos", count);
    if (count == 0)
    {
      throw ConfigError("num_mnos must be at least 1");
    }
    if (count != out.mnos.size())
    {
      out.mnos = graded_share_mnos(count, prototype);
    }
  }

  if (j.contains("valuation"))
  {
    auto const &v = j.at("valuation");
    reject_unknown(v, "valuation", {"low", "high"});
    read(v, "low", out.valuation.low);
    read(v, "high", out.valuation.high);
  }

  if (j.contains("sensing"))
  {
    auto const &s  = j.at("sensing");
    auto       &sc = out.sensing;
    reject_unknown(s, "sensing",
                   {"total_bandwidth_mhz", "block_bandwidth_mhz", "energy_threshold",
                    "vote_threshold", "uavs_per_mno", "snr_db", "noise_power", "activity_prob",
                    "perfect_sensing", "flight"});
    read(s, "total_bandwidth_mhz", sc.total_bandwidth_mhz);
    read(s, "block_bandwidth_mhz", sc.block_bandwidth_mhz);
    read(s, "energy_threshold", sc.energy_threshold);
    read(s, "vote_threshold", sc.vote_threshold);
    read(s, "uavs_per_mno", sc.uavs_per_mno);
    read(s, "snr_db", sc.snr_db);
    read(s, "noise_power", sc.noise_power);
    read(s, "activity_prob", sc.activity_prob);
    read(s, "perfect_sensing", sc.perfect_sensing);
    if (s.contains("flight"))
    {
      auto const &f = s.at("flight");
      reject_unknown(f, "flight",
                     {"altitude_m", "radius_m", "speed_mps", "sensing_angle", "decision_angle"});
      read(f, "altitude_m", sc.flight.altitude_m);
      read(f, "radius_m", sc.flight.radius_m);
      read(f, "speed_mps", sc.flight.speed_mps);
      read(f, "sensing_angle", sc.flight.sensing_angle);
      read(f, "decision_angle", sc.flight.decision_angle);
    }
  }

  if (j.contains("policy"))
  {
    auto const &p = j.at("policy");
    reject_unknown(p, "policy", {"kind", "update_period", "weight_floor"});
    if (p.contains("kind"))
    {
      std::string kind;
      read(p, "kind", kind);
      out.policy.kind = parse_policy_kind(kind);
    }
    read(p, "update_period", out.policy.update_period);
    read(p, "weight_floor", out.policy.weight_floor);
  }

  read(j, "episode_length", out.episode_length);
  return out;
}

json to_json(const ExperimentConfig &config)
{
  auto j        = to_json(config.simulation);
  j["auctions"] = config.auctions;
  j["seeds"]    = config.seeds;
  j["output"]   = config.output;
  return j;
}

ExperimentConfig experiment_from_json(const json &j)
{
  if (!j.is_object())
  {
    throw ConfigError("configuration root must be an object");
  }
  ExperimentConfig out;
  json             sim = j;
  for (auto const *key : {"auctions", "seeds", "output"})
  {
    sim.erase(key);
  }
  out.simulation = simulation_from_json(sim);
  read(j, "auctions", out.auctions);
  read(j, "seeds", out.seeds);
  read(j, "output", out.output);
  return out;
}

SimulationConfig with_overrides(const SimulationConfig &base, const json &patch)
{
  if (patch.is_null())
  {
    return base;
  }
  if (!patch.is_object())
  {
    throw ConfigError("config overrides must be an object");
  }
  auto merged = to_json(base);
  // A new operator count replaces the operator list rather than patching it.
  if (patch.contains("num_mnos") && !patch.contains("mnos"))
  {
    merged.erase("mnos");
  }
  merged.merge_patch(patch);
  return simulation_from_json(merged);
}

ExperimentConfig load_experiment_config(const std::filesystem::path &path)
{
  std::ifstream in(path);
  if (!in)
  {
    throw ConfigError("cannot open config file " + path.string());
  }
  json j;
  try
  {
    j = json::parse(in, nullptr, true, true);
  }
  catch (const json::parse_error &e)
  {
    throw ConfigError("config file " + path.string() + ": " + e.what());
  }
  return experiment_from_json(j);
}

}  // namespace fvcg
