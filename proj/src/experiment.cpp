#include "fvcg/experiment.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <future>
#include <iomanip>
#include <numeric>
#include <ostream>

#include "fvcg/error.hpp"

namespace fvcg {

namespace {

// Shortest round-trip representation keeps the CSV exact and byte-stable.
std::string num(double v)
{
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return ec == std::errc{} ? std::string(buf, end) : std::string("nan");
}

double mean_of(std::span<const double> xs)
{
  return xs.empty() ? 0.0 : std::accumulate(xs.begin(), xs.end(), 0.0) / xs.size();
}

double stddev_of(std::span<const double> xs)
{
  if (xs.size() < 2)
  {
    return 0.0;
  }
  double const mu = mean_of(xs);
  double       ss = 0.0;
  for (double x : xs)
  {
    ss += (x - mu) * (x - mu);
  }
  return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

}  // namespace

std::vector<AuctionRecord> run_seed(const SimulationConfig &config, std::uint64_t seed,
                                    std::uint64_t auctions)
{
  Simulation                 sim(config, seed);
  std::vector<AuctionRecord> records;
  records.reserve(auctions);
  for (std::uint64_t j = 0; j < auctions; ++j)
  {
    records.push_back(sim.step_with_policy());
  }
  return records;
}

std::vector<std::vector<AuctionRecord>> run_seeds(const SimulationConfig        &config,
                                                  std::span<const std::uint64_t> seeds,
                                                  std::uint64_t                  auctions)
{
  std::vector<std::future<std::vector<AuctionRecord>>> pending;
  pending.reserve(seeds.size());
  for (auto seed : seeds)
  {
    pending.push_back(std::async(std::launch::async,
                                 [&config, seed, auctions] { return run_seed(config, seed, auctions); }));
  }
  std::vector<std::vector<AuctionRecord>> out;
  out.reserve(seeds.size());
  for (auto &f : pending)
  {
    out.push_back(f.get());
  }
  return out;
}

std::size_t steady_state_window(std::size_t auctions)
{
  return std::max<std::size_t>(1, (auctions + 9) / 10);
}

double steady_state_fairness(std::span<const AuctionRecord> records)
{
  if (records.empty())
  {
    return 1.0;
  }
  auto const window = std::min(records.size(), steady_state_window(records.size()));
  double     sum    = 0.0;
  for (auto it = records.end() - static_cast<std::ptrdiff_t>(window); it != records.end(); ++it)
  {
    sum += it->outcome.fairness;
  }
  return sum / static_cast<double>(window);
}

void write_csv_rows(std::ostream &out, std::span<const AuctionRecord> records, std::uint64_t seed,
                    PolicyKind policy, std::optional<double> sweep_value)
{
  auto const policy_name = std::string(to_string(policy));
  auto const suffix      = sweep_value ? "," + num(*sweep_value) : std::string();
  for (auto const &rec : records)
  {
    auto const prefix = std::to_string(rec.auction) + ',' + std::to_string(seed) + ',' +
                        policy_name + ',' + num(rec.outcome.fairness) + ',' +
                        std::to_string(rec.snapshot.capacity) + ',';
    for (MnoIndex m = 0; m < rec.round.size(); ++m)
    {
      auto const &l = rec.ledgers[m];
      out << prefix << (m + 1) << ',' << num(rec.round.bids[m]) << ',' << num(rec.weights[m])
          << ',' << (rec.outcome.won(m) ? 1 : 0) << ',' << num(rec.outcome.payments[m]) << ','
          << num(rec.revenues[m]) << ',' << num(l.cumulative_utility) << ',' << l.wins << ','
          << l.requests << suffix << '\n';
    }
  }
}

PolicySummary summarize(PolicyKind policy, std::span<const std::vector<AuctionRecord>> runs)
{
  PolicySummary s;
  s.policy = policy;
  for (auto const &run : runs)
  {
    s.per_seed.push_back(steady_state_fairness(run));
  }
  s.mean   = mean_of(s.per_seed);
  s.stddev = stddev_of(s.per_seed);
  return s;
}

PolicySummary run_experiment(const ExperimentConfig &config, std::ostream &csv)
{
  validate(config);
  if (config.simulation.policy.kind == PolicyKind::external)
  {
    throw ConfigError("the external policy needs an agent; use serve");
  }
  auto const runs = run_seeds(config.simulation, config.seeds, config.auctions);
  csv << kCsvHeader << '\n';
  for (std::size_t i = 0; i < runs.size(); ++i)
  {
    write_csv_rows(csv, runs[i], config.seeds[i], config.simulation.policy.kind);
  }
  return summarize(config.simulation.policy.kind, runs);
}

PolicySummary run_experiment_to_file(const ExperimentConfig &config)
{
  validate(config);
  std::ofstream out(config.output, std::ios::binary | std::ios::trunc);
  if (!out)
  {
    throw IoError("cannot write " + config.output);
  }
  auto summary = run_experiment(config, out);
  out.flush();
  if (!out)
  {
    throw IoError("failed writing " + config.output);
  }
  return summary;
}

std::vector<PolicySummary> compare(const ExperimentConfig &config,
                                   std::span<const PolicyKind> policies)
{
  validate(config);
  std::vector<PolicySummary> out;
  for (auto kind : policies)
  {
    if (kind == PolicyKind::external)
    {
      throw ConfigError("the external policy needs an agent; use serve");
    }
    auto sim        = config.simulation;
    sim.policy.kind = kind;
    auto const runs = run_seeds(sim, config.seeds, config.auctions);
    out.push_back(summarize(kind, runs));
  }

  if (out.empty())
  {
    return out;
  }
  auto baseline = out.front().mean;
  for (auto const &s : out)
  {
    if (s.policy == PolicyKind::unweighted)
    {
      baseline = s.mean;
      break;
    }
  }
  for (auto &s : out)
  {
    s.improvement_pct = baseline > 0.0 ? 100.0 * (s.mean - baseline) / baseline : 0.0;
  }
  return out;
}

void print_comparison(std::ostream &out, std::span<const PolicySummary> summaries)
{
  out << std::left << std::setw(18) << "policy" << std::right << std::setw(12) << "mean"
      << std::setw(12) << "stddev" << std::setw(14) << "improvement" << '\n';
  for (auto const &s : summaries)
  {
    out << std::left << std::setw(18) << to_string(s.policy) << std::right << std::fixed
        << std::setprecision(4) << std::setw(12) << s.mean << std::setw(12) << s.stddev
        << std::setprecision(2) << std::setw(13) << s.improvement_pct << "%\n";
  }
  out << std::defaultfloat;
}

SweepAxis parse_sweep_axis(const std::string &name)
{
  if (name == "n")
  {
    return SweepAxis::vote_threshold;
  }
  if (name == "M")
  {
    return SweepAxis::mno_count;
  }
  throw ConfigError("unknown sweep axis '" + name + "' (expected n or M)");
}

SimulationConfig sweep_config(const SimulationConfig &base, SweepAxis axis, double value)
{
  if (!(value >= 1.0) || value != std::floor(value))
  {
    throw ConfigError("sweep values must be positive integers");
  }
  auto const v   = static_cast<unsigned>(value);
  auto       out = base;
  if (axis == SweepAxis::vote_threshold)
  {
    out.sensing.vote_threshold = v;
  }
  else
  {
    auto prototype = base.mnos.front();
    out.mnos       = graded_share_mnos(v, prototype);
  }
  validate(out);
  return out;
}

std::vector<SweepPoint> sweep(const ExperimentConfig &config, SweepAxis axis,
                              std::span<const double> values, std::ostream &csv,
                              std::ostream &warnings)
{
  std::vector<SweepPoint> out;
  if (values.empty())
  {
    return out;
  }
  validate(config);
  csv << kCsvHeader << ",sweep_value\n";
  for (double value : values)
  {
    SimulationConfig sim;
    try
    {
      sim = sweep_config(config.simulation, axis, value);
    }
    catch (const ConfigError &e)
    {
      warnings << "warning: skipping sweep value " << value << ": " << e.what() << '\n';
      continue;
    }
    auto const runs = run_seeds(sim, config.seeds, config.auctions);
    for (std::size_t i = 0; i < runs.size(); ++i)
    {
      write_csv_rows(csv, runs[i], config.seeds[i], sim.policy.kind, value);
    }
    out.push_back({value, summarize(sim.policy.kind, runs)});
  }
  return out;
}

}  // namespace fvcg
