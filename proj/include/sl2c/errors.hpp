#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sl2c {

enum class ErrorKind {
  PoleAtArgument,
  DomainError,
  ParityViolation,
  CoincidentPoints,
  NonIntegrableSingularity,
  InsufficientDecay,
  UniquenessViolation,
  ContourPinch,
  TruncationNotConverged,
  InvalidArgument,
};

std::string_view kind_name(ErrorKind kind) noexcept;

// Single exception type for every precondition or numerical failure; the kind
// is what callers (and the CLI exit-code mapping) dispatch on.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(kind_name(kind)) + ": " + message),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

}  // namespace sl2c
