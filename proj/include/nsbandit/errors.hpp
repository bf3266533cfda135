#pragma once

#include <stdexcept>
#include <string>

namespace nsb {

// Bad parameter values supplied by a caller or a config file.
class InvalidParameter : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A caller broke an operation's precondition at run time (e.g. a reward
// outside [0,1], an arm that was never proposed).
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Malformed experiment configuration; the message names the offending field.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace nsb
