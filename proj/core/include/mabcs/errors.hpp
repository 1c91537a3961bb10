#pragma once

#include <stdexcept>
#include <string>

namespace mabcs {

/// Invalid run configuration (bad value, violated invariant, unknown key).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Misuse of an API contract that indicates a bug in the caller.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace mabcs
