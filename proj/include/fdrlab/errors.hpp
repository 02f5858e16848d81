#pragma once

#include <stdexcept>
#include <string>

namespace fdrlab {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An argument outside the mathematical domain of an operation.
struct DomainError : Error {
  using Error::Error;
};

// An invalid parameter combination in a procedure or estimator description.
struct ConfigError : Error {
  using Error::Error;
};

// File and parse problems surfaced by the CLI layer.
struct IoError : Error {
  using Error::Error;
};

}  // namespace fdrlab
