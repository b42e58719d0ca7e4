#pragma once

#include <stdexcept>
#include <string>

namespace hqc {

/// Category of a failure. The CLI maps `validation` to exit code 2 and
/// everything else to exit code 1.
enum class ErrorKind {
  validation,       // a precondition on user-supplied parameters failed
  amplitude_guard,  // coherent amplitude beyond the truncation guard
  invalid_operator, // operator does not satisfy the required invariants
  dimension,        // mismatched Hilbert-space dimensions
  accuracy,         // truncated numerics cannot reach the requested accuracy
  convergence,      // an iterative or adaptive method did not converge
  undefined_conditional,
  sampling,
  io,
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace hqc
