#pragma once

#include <stdexcept>
#include <string>

namespace glesim {

// Category tags so callers (and tests) can react to failure modes without
// parsing messages.
enum class ErrorKind {
  invalid_argument,   // bad parameter values (alpha <= 0, eps <= 0, ...)
  dimension_mismatch, // incompatible matrix / vector shapes
  domain,             // operation not meaningful for this model/domain
  numerical,          // solver non-convergence, non-finite state, ...
  budget,             // resource budget exceeded before launch
  schema,             // config document violates the schema
  io,                 // file read/write failures
};

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, std::string message)
      : std::runtime_error(std::move(message)), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

inline void require(bool cond, ErrorKind kind, const std::string& message) {
  if (!cond) fail(kind, message);
}

} // namespace glesim
