#pragma once

#include <stdexcept>
#include <string>

namespace qmod {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Rewriting exceeded its step bound or a symbolic identity check failed.
struct PresentationError : Error {
  using Error::Error;
};

struct AlgebraMismatch : Error {
  AlgebraMismatch() : Error("algebra mismatch") {}
};

struct QIdentityViolated : Error {
  explicit QIdentityViolated(const std::string& residual)
      : Error("q-ideal identity violated: " + residual) {}
};

struct SpanningFormFailure : Error {
  using Error::Error;
};

/// The window cannot hold the requested polynomial degree or index.
struct WindowUnderflow : Error {
  using Error::Error;
};

/// A trace tail estimate exceeded the tolerance.
struct WindowTooSmall : Error {
  WindowTooSmall(const std::string& what, int suggested)
      : Error(what), suggested_size(suggested) {}
  int suggested_size;
};

struct NonConvergent : Error {
  using Error::Error;
};

struct NoSpectralGap : Error {
  using Error::Error;
};

struct ConfigError : Error {
  using Error::Error;
};

}  // namespace qmod
