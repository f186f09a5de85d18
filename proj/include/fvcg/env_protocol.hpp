#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "fvcg/config.hpp"
#include "fvcg/simulation.hpp"

namespace fvcg {

/// Observation handed to an agent, flattened in a fixed field order.
struct EnvState
{
  std::vector<Currency>      bids;
  std::vector<unsigned>      packages;
  std::vector<Currency>      values;
  std::vector<unsigned>      vacancy;  ///< 1 = vacant, length C
  unsigned                   capacity = 0;
  std::vector<std::uint64_t> wins;
  std::vector<std::uint64_t> requests;
  std::vector<Currency>      utility;

  bool operator==(const EnvState &) const = default;
};

struct StepInfo
{
  std::vector<std::uint64_t> winners;  ///< 1-based operator ids
  std::vector<Currency>      payments;  ///< aligned with winners
  Currency                   social_value = 0.0;

  bool operator==(const StepInfo &) const = default;
};

struct EnvStep
{
  EnvState state;
  double   reward = 0.0;
  bool     done   = false;
  StepInfo info;

  bool operator==(const EnvStep &) const = default;
};

/// The repeated auction as an episodic MDP. Actions are bid weights,
/// clipped to [weight_floor, 1] on receipt; the reward is the Jain index
/// after settlement.
class Environment
{
public:
  explicit Environment(SimulationConfig base = {});

  EnvState reset(std::uint64_t seed, const nlohmann::json &overrides = nullptr);
  EnvStep  step(std::span<const double> weights);

  [[nodiscard]] bool          active() const { return sim_ != nullptr && !done_; }
  [[nodiscard]] std::uint64_t auction() const;
  [[nodiscard]] std::size_t   num_mnos() const;

  /// Last full record, for in-process comparison with the wire stream.
  [[nodiscard]] const std::optional<AuctionRecord> &last_record() const { return last_; }

private:
  [[nodiscard]] EnvState observe() const;

  SimulationConfig             base_;
  std::unique_ptr<Simulation>  sim_;
  bool                         done_ = false;
  std::optional<AuctionRecord> last_;
};

// Wire messages. Each is one line of JSON.

struct ResetRequest
{
  std::uint64_t                 seed = 0;
  std::optional<nlohmann::json> config;

  bool operator==(const ResetRequest &) const = default;
};

struct StepRequest
{
  std::vector<double> weights;

  bool operator==(const StepRequest &) const = default;
};

struct CloseRequest
{
  bool operator==(const CloseRequest &) const = default;
};

using Request = std::variant<ResetRequest, StepRequest, CloseRequest>;

struct StateReply
{
  std::uint64_t auction = 0;
  EnvState      state;

  bool operator==(const StateReply &) const = default;
};

struct StepReply
{
  EnvStep step;

  bool operator==(const StepReply &) const = default;
};

struct ErrorReply
{
  std::string message;

  bool operator==(const ErrorReply &) const = default;
};

using Reply = std::variant<StateReply, StepReply, ErrorReply>;

class ProtocolError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

Request     decode_request(std::string_view line);
std::string encode(const Request &request);
Reply       decode_reply(std::string_view line);
std::string encode(const Reply &reply);

/// Message loop state for one client. Never throws on bad input; every
/// failure becomes an error reply.
class ProtocolSession
{
public:
  explicit ProtocolSession(SimulationConfig base = {});

  /// Reply line for one request line, or nothing once the client closed.
  std::optional<std::string> handle(std::string_view line);

  [[nodiscard]] bool               closed() const { return closed_; }
  [[nodiscard]] const Environment &environment() const { return env_; }

private:
  Reply dispatch(const Request &request);

  Environment env_;
  bool        closed_ = false;
};

/// Serves one session over a line stream until close or end of input.
void serve_stream(std::istream &in, std::ostream &out, const SimulationConfig &base);

/// Listens on 127.0.0.1:`port` (0 picks a free port) and serves clients one
/// after another. `on_listening` receives the bound port. Stops after
/// `max_sessions` sessions when non-zero.
void serve_tcp(std::uint16_t port, const SimulationConfig &base,
               const std::function<void(std::uint16_t)> &on_listening = {},
               std::size_t max_sessions = 0);

}  // namespace fvcg
