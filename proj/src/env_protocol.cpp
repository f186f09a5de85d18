#include "fvcg/env_protocol.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>

#include <arpa/inet.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <unistd.h>

#include "fvcg/error.hpp"

namespace fvcg {

using ojson = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Environment

Environment::Environment(SimulationConfig base)
  : base_(std::move(base))
{}

EnvState Environment::reset(std::uint64_t seed, const nlohmann::json &overrides)
{
  auto config = with_overrides(base_, overrides);
  config.policy.kind = PolicyKind::external;
  sim_  = std::make_unique<Simulation>(std::move(config), seed);
  done_ = false;
  last_.reset();
  return observe();
}

std::uint64_t Environment::auction() const
{
  return sim_ ? sim_->auction() : 0;
}

std::size_t Environment::num_mnos() const
{
  return sim_ ? sim_->config().mnos.size() : 0;
}

EnvState Environment::observe() const
{
  EnvState s;
  auto const &round = sim_->pending_round();
  auto const &snap  = sim_->pending_snapshot();
  s.bids            = round.bids;
  s.packages        = round.packages;
  s.values          = round.values;
  s.vacancy.reserve(snap.vacancy.size());
  for (bool v : snap.vacancy)
  {
    s.vacancy.push_back(v ? 1u : 0u);
  }
  s.capacity = snap.capacity;
  for (auto const &l : sim_->ledgers())
  {
    s.wins.push_back(l.wins);
    s.requests.push_back(l.requests);
    s.utility.push_back(l.cumulative_utility);
  }
  return s;
}

EnvStep Environment::step(std::span<const double> weights)
{
  if (sim_ == nullptr)
  {
    throw ProtocolError("no active episode; send reset first");
  }
  if (done_)
  {
    throw ProtocolError("episode finished; send reset");
  }
  if (weights.size() != num_mnos())
  {
    throw ProtocolError("expected " + std::to_string(num_mnos()) + " weights, got " +
                        std::to_string(weights.size()));
  }

  double const floor = sim_->config().policy.weight_floor;
  WeightVector clipped(weights.size());
  for (std::size_t m = 0; m < weights.size(); ++m)
  {
    if (!std::isfinite(weights[m]))
    {
      throw ProtocolError("weights must be finite");
    }
    clipped[m] = std::clamp(weights[m], floor, 1.0);
  }

  auto rec = sim_->step(clipped);
  done_    = rec.auction >= sim_->config().episode_length;

  EnvStep out;
  out.reward = rec.outcome.fairness;
  out.done   = done_;
  for (auto m : rec.outcome.winners)
  {
    out.info.winners.push_back(m + 1);
    out.info.payments.push_back(rec.outcome.payments[m]);
  }
  out.info.social_value = rec.outcome.social_value;
  out.state             = observe();
  last_                 = std::move(rec);
  return out;
}

// ---------------------------------------------------------------------------
// Wire encoding

namespace {

ojson state_to_json(const EnvState &s)
{
  ojson j;
  j["bids"]     = s.bids;
  j["packages"] = s.packages;
  j["values"]   = s.values;
  j["vacancy"]  = s.vacancy;
  j["capacity"] = s.capacity;
  j["wins"]     = s.wins;
  j["requests"] = s.requests;
  j["utility"]  = s.utility;
  return j;
}

template <typename T>
T field(const ojson &j, const char *key)
{
  if (!j.contains(key))
  {
    throw ProtocolError(std::string("missing field '") + key + "'");
  }
  try
  {
    return j.at(key).get<T>();
  }
  catch (const ojson::exception &)
  {
    throw ProtocolError(std::string("invalid field '") + key + "'");
  }
}

EnvState state_from_json(const ojson &j)
{
  if (!j.is_object())
  {
    throw ProtocolError("state must be an object");
  }
  EnvState s;
  s.bids     = field<std::vector<Currency>>(j, "bids");
  s.packages = field<std::vector<unsigned>>(j, "packages");
  s.values   = field<std::vector<Currency>>(j, "values");
  s.vacancy  = field<std::vector<unsigned>>(j, "vacancy");
  s.capacity = field<unsigned>(j, "capacity");
  s.wins     = field<std::vector<std::uint64_t>>(j, "wins");
  s.requests = field<std::vector<std::uint64_t>>(j, "requests");
  s.utility  = field<std::vector<Currency>>(j, "utility");
  return s;
}

ojson parse_object(std::string_view line)
{
  ojson j = ojson::parse(line, nullptr, false);
  if (j.is_discarded())
  {
    throw ProtocolError("malformed json");
  }
  if (!j.is_object())
  {
    throw ProtocolError("message must be a json object");
  }
  return j;
}

}  // namespace

Request decode_request(std::string_view line)
{
  auto const j = parse_object(line);
  if (!j.contains("cmd") || !j.at("cmd").is_string())
  {
    throw ProtocolError("missing cmd");
  }
  auto const cmd = j.at("cmd").get<std::string>();
  if (cmd == "reset")
  {
    ResetRequest r;
    if (j.contains("seed"))
    {
      if (!j.at("seed").is_number_unsigned())
      {
        throw ProtocolError("seed must be a non-negative integer");
      }
      r.seed = j.at("seed").get<std::uint64_t>();
    }
    if (j.contains("config"))
    {
      if (!j.at("config").is_object())
      {
        throw ProtocolError("config must be an object");
      }
      r.config = nlohmann::json::parse(j.at("config").dump());
    }
    return r;
  }
  if (cmd == "step")
  {
    if (!j.contains("weights") || !j.at("weights").is_array())
    {
      throw ProtocolError("step requires a weights array");
    }
    StepRequest r;
    for (auto const &w : j.at("weights"))
    {
      if (!w.is_number())
      {
        throw ProtocolError("weights must be numbers");
      }
      r.weights.push_back(w.get<double>());
    }
    return r;
  }
  if (cmd == "close")
  {
    return CloseRequest{};
  }
  throw ProtocolError("unknown cmd");
}

std::string encode(const Request &request)
{
  ojson j;
  std::visit(
      [&j](const auto &r) {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, ResetRequest>)
        {
          j["cmd"]  = "reset";
          j["seed"] = r.seed;
          if (r.config)
          {
            j["config"] = ojson::parse(r.config->dump());
          }
        }
        else if constexpr (std::is_same_v<T, StepRequest>)
        {
          j["cmd"]     = "step";
          j["weights"] = r.weights;
        }
        else
        {
          j["cmd"] = "close";
        }
      },
      request);
  return j.dump();
}

Reply decode_reply(std::string_view line)
{
  auto const j = parse_object(line);
  auto const event = field<std::string>(j, "event");
  if (event == "state")
  {
    StateReply r;
    r.auction = field<std::uint64_t>(j, "auction");
    r.state   = state_from_json(field<ojson>(j, "state"));
    return r;
  }
  if (event == "step")
  {
    StepReply r;
    r.step.state  = state_from_json(field<ojson>(j, "state"));
    r.step.reward = field<double>(j, "reward");
    r.step.done   = field<bool>(j, "done");
    auto const info = field<ojson>(j, "info");
    r.step.info.winners      = field<std::vector<std::uint64_t>>(info, "winners");
    r.step.info.payments     = field<std::vector<Currency>>(info, "payments");
    r.step.info.social_value = field<double>(info, "social_value");
    return r;
  }
  if (event == "error")
  {
    return ErrorReply{field<std::string>(j, "message")};
  }
  throw ProtocolError("unknown event");
}

std::string encode(const Reply &reply)
{
  ojson j;
  std::visit(
      [&j](const auto &r) {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, StateReply>)
        {
          j["event"]   = "state";
          j["auction"] = r.auction;
          j["state"]   = state_to_json(r.state);
        }
        else if constexpr (std::is_same_v<T, StepReply>)
        {
          j["event"]  = "step";
          j["state"]  = state_to_json(r.step.state);
          j["reward"] = r.step.reward;
          j["done"]   = r.step.done;
          ojson info;
          info["winners"]      = r.step.info.winners;
          info["payments"]     = r.step.info.payments;
          info["social_value"] = r.step.info.social_value;
          j["info"]            = std::move(info);
        }
        else
        {
          j["event"]   = "error";
          j["message"] = r.message;
        }
      },
      reply);
  return j.dump();
}

// ---------------------------------------------------------------------------
// Session

ProtocolSession::ProtocolSession(SimulationConfig base)
  : env_(std::move(base))
{}

Reply ProtocolSession::dispatch(const Request &request)
{
  if (auto const *reset = std::get_if<ResetRequest>(&request))
  {
    auto state = env_.reset(reset->seed, reset->config.value_or(nlohmann::json()));
    return StateReply{env_.auction(), std::move(state)};
  }
  if (auto const *step = std::get_if<StepRequest>(&request))
  {
    return StepReply{env_.step(step->weights)};
  }
  throw ProtocolError("unknown cmd");
}

std::optional<std::string> ProtocolSession::handle(std::string_view line)
{
  if (closed_)
  {
    return std::nullopt;
  }
  try
  {
    auto const request = decode_request(line);
    if (std::holds_alternative<CloseRequest>(request))
    {
      closed_ = true;
      return std::nullopt;
    }
    return encode(dispatch(request));
  }
  catch (const std::exception &e)
  {
    return encode(ErrorReply{e.what()});
  }
}

void serve_stream(std::istream &in, std::ostream &out, const SimulationConfig &base)
{
  ProtocolSession session(base);
  std::string     line;
  while (!session.closed() && std::getline(in, line))
  {
    if (line.empty())
    {
      continue;
    }
    if (auto reply = session.handle(line))
    {
      out << *reply << '\n' << std::flush;
    }
  }
}

namespace {

class Socket
{
public:
  explicit Socket(int fd)
    : fd_(fd)
  {}
  Socket(const Socket &)            = delete;
  Socket &operator=(const Socket &) = delete;
  ~Socket()
  {
    if (fd_ >= 0)
    {
      ::close(fd_);
    }
  }

  [[nodiscard]] int get() const { return fd_; }

private:
  int fd_;
};

bool send_all(int fd, std::string_view data)
{
  while (!data.empty())
  {
    auto const n = ::send(fd, data.data(), data.size(), MSG_NOSIGNAL);
    if (n <= 0)
    {
      return false;
    }
    data.remove_prefix(static_cast<std::size_t>(n));
  }
  return true;
}

void serve_connection(int fd, const SimulationConfig &base)
{
  ProtocolSession session(base);
  std::string     buffer;
  char            chunk[4096];
  while (!session.closed())
  {
    auto const n = ::recv(fd, chunk, sizeof(chunk), 0);
    if (n <= 0)
    {
      return;
    }
    buffer.append(chunk, static_cast<std::size_t>(n));
    std::size_t pos = 0;
    while (!session.closed())
    {
      auto const nl = buffer.find('\n', pos);
      if (nl == std::string::npos)
      {
        break;
      }
      std::string_view line(buffer.data() + pos, nl - pos);
      pos = nl + 1;
      if (!line.empty() && line.back() == '\r')
      {
        line.remove_suffix(1);
      }
      if (line.empty())
      {
        continue;
      }
      if (auto reply = session.handle(line))
      {
        if (!send_all(fd, *reply + "\n"))
        {
          return;
        }
      }
    }
    buffer.erase(0, pos);
  }
}

}  // namespace

void serve_tcp(std::uint16_t port, const SimulationConfig &base,
               const std::function<void(std::uint16_t)> &on_listening, std::size_t max_sessions)
{
  Socket listener(::socket(AF_INET, SOCK_STREAM, 0));
  if (listener.get() < 0)
  {
    throw IoError("serve: cannot create socket");
  }
  int const one = 1;
  ::setsockopt(listener.get(), SOL_SOCKET, SO_REUSEADDR, &one, sizeof(one));

  sockaddr_in addr{};
  addr.sin_family      = AF_INET;
  addr.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
  addr.sin_port        = htons(port);
  if (::bind(listener.get(), reinterpret_cast<sockaddr *>(&addr), sizeof(addr)) != 0 ||
      ::listen(listener.get(), 1) != 0)
  {
    throw IoError("serve: cannot listen on port " + std::to_string(port));
  }

  socklen_t len = sizeof(addr);
  ::getsockname(listener.get(), reinterpret_cast<sockaddr *>(&addr), &len);
  if (on_listening)
  {
    on_listening(ntohs(addr.sin_port));
  }

  for (std::size_t served = 0; max_sessions == 0 || served < max_sessions; ++served)
  {
    Socket client(::accept(listener.get(), nullptr, nullptr));
    if (client.get() < 0)
    {
      throw IoError("serve: accept failed");
    }
    serve_connection(client.get(), base);
  }
}

}  // namespace fvcg
