#pragma once

#include <stdexcept>
#include <string>

namespace fvcg {

/// Raised when a caller breaks an operation's precondition.
class ContractViolation : public std::logic_error
{
public:
  using std::logic_error::logic_error;
};

/// Raised for invalid or inconsistent configuration values.
class ConfigError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// Raised when an output or input file cannot be accessed.
class IoError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

}  // namespace fvcg
