#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fvcg/config.hpp"
#include "fvcg/env_protocol.hpp"
#include "fvcg/error.hpp"
#include "fvcg/experiment.hpp"

namespace {

constexpr int kExitConfig = 1;
constexpr int kExitIo     = 2;

struct CommonOptions
{
  std::string                config_path;
  std::string                policy;
  std::optional<std::uint64_t> auctions;
  std::optional<std::uint64_t> seed;
  std::vector<std::uint64_t> seeds;
  std::string                out;
};

void add_common(CLI::App &cmd, CommonOptions &opts)
{
  cmd.add_option("--config", opts.config_path, "JSON configuration file");
  cmd.add_option("--policy", opts.policy,
                 "unweighted | win-per-request | utility | combined | mswga");
  cmd.add_option("--auctions", opts.auctions, "number of auctions per seed");
  cmd.add_option("--seed", opts.seed, "single seed");
  cmd.add_option("--seeds", opts.seeds, "comma-separated seeds")->delimiter(',');
  cmd.add_option("--out", opts.out, "output CSV path");
}

fvcg::ExperimentConfig resolve(const CommonOptions &opts)
{
  fvcg::ExperimentConfig config;
  if (!opts.config_path.empty())
  {
    config = fvcg::load_experiment_config(opts.config_path);
  }
  if (!opts.policy.empty())
  {
    config.simulation.policy.kind = fvcg::parse_policy_kind(opts.policy);
  }
  if (opts.auctions)
  {
    config.auctions = *opts.auctions;
  }
  if (!opts.seeds.empty())
  {
    config.seeds = opts.seeds;
  }
  if (opts.seed)
  {
    config.seeds = {*opts.seed};
  }
  if (!opts.out.empty())
  {
    config.output = opts.out;
  }
  fvcg::validate(config);
  return config;
}

}  // namespace

int main(int argc, char **argv)
{
  CLI::App app{"Fairness-weighted repeated spectrum auction simulator"};
  app.require_subcommand(1);

  CommonOptions run_opts;
  auto         *run = app.add_subcommand("run", "run one policy over all seeds and write CSV");
  add_common(*run, run_opts);

  CommonOptions            cmp_opts;
  std::vector<std::string> policies{"unweighted", "win-per-request", "utility", "combined",
                                    "mswga"};
  auto *cmp = app.add_subcommand("compare", "steady-state fairness per policy");
  add_common(*cmp, cmp_opts);
  cmp->add_option("--policies", policies, "comma-separated policy names")->delimiter(',');

  CommonOptions       sweep_opts;
  std::string         axis;
  std::vector<double> values;
  auto *swp = app.add_subcommand("sweep", "repeat a run over vote thresholds (n) or MNO counts (M)");
  add_common(*swp, sweep_opts);
  swp->add_option("--axis", axis, "n | M")->required();
  swp->add_option("--values", values, "comma-separated axis values")->delimiter(',');

  std::string   serve_config;
  std::uint16_t port = 0;
  bool          use_stdio = false;
  auto *srv = app.add_subcommand("serve", "serve the environment protocol to an agent");
  srv->add_option("--config", serve_config, "JSON configuration file");
  auto *port_opt  = srv->add_option("--port", port, "TCP port on 127.0.0.1");
  auto *stdio_opt = srv->add_flag("--stdio", use_stdio, "serve on stdin/stdout (default)");
  port_opt->excludes(stdio_opt);

  try
  {
    app.parse(argc, argv);
  }
  catch (const CLI::CallForHelp &e)
  {
    return app.exit(e);
  }
  catch (const CLI::ParseError &e)
  {
    app.exit(e);
    return kExitConfig;
  }

  try
  {
    if (run->parsed())
    {
      auto const config  = resolve(run_opts);
      auto const summary = fvcg::run_experiment_to_file(config);
      std::cerr << "steady-state fairness " << summary.mean << " (sd " << summary.stddev
                << ") over " << config.seeds.size() << " seed(s); wrote " << config.output << '\n';
    }
    else if (cmp->parsed())
    {
      auto const                    config = resolve(cmp_opts);
      std::vector<fvcg::PolicyKind> kinds;
      for (auto const &p : policies)
      {
        kinds.push_back(fvcg::parse_policy_kind(p));
      }
      auto const summaries = fvcg::compare(config, kinds);
      fvcg::print_comparison(std::cout, summaries);
    }
    else if (swp->parsed())
    {
      auto const config = resolve(sweep_opts);
      auto const which  = fvcg::parse_sweep_axis(axis);
      if (values.empty())
      {
        return 0;
      }
      std::ofstream out(config.output, std::ios::binary | std::ios::trunc);
      if (!out)
      {
        throw fvcg::IoError("cannot write " + config.output);
      }
      auto const points = fvcg::sweep(config, which, values, out, std::cerr);
      out.flush();
      if (!out)
      {
        throw fvcg::IoError("failed writing " + config.output);
      }
      for (auto const &p : points)
      {
        std::cout << axis << '=' << p.value << " fairness " << p.summary.mean << " (sd "
                  << p.summary.stddev << ")\n";
      }
    }
    else if (srv->parsed())
    {
      fvcg::SimulationConfig base;
      if (!serve_config.empty())
      {
        base = fvcg::load_experiment_config(serve_config).simulation;
      }
      fvcg::validate(base);
      if (port_opt->count() > 0)
      {
        fvcg::serve_tcp(port, base, [](std::uint16_t bound) {
          std::cerr << "listening on 127.0.0.1:" << bound << '\n';
        });
      }
      else
      {
        fvcg::serve_stream(std::cin, std::cout, base);
      }
    }
  }
  catch (const fvcg::ConfigError &e)
  {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  }
  catch (const fvcg::IoError &e)
  {
    std::cerr << "i/o error: " << e.what() << '\n';
    return kExitIo;
  }
  return 0;
}
