#pragma once

#include <stdexcept>
#include <string>

namespace lyapspec {

// Error taxonomy shared across modules. The CLI maps ConfigError to exit
// code 2 and every numerical error below to exit code 3.

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ConvergenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DerivativeZeroError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InfiniteValueError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NoSupportLineError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DivisionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DegenerateError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DivergentError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NoRootError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct UnsupportedTailError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct EmptyLevelSetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NotParabolicError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct OutOfDomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ZeroAlphaError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace lyapspec
