#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace minlab {

// Failure categories. The CLI maps these onto its exit codes.
enum class ErrorKind {
  argument,     // invalid caller input (bad radius list, unknown name, ...)
  domain,       // non-finite parameter values
  range,        // result outside the representable range
  resource,     // vertex cap exceeded
  degenerate,   // constant field, empty boundary, zero oscillation
  numerical,    // iterative solver failed to converge
  io,           // unreadable or malformed file
};

std::string_view to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace minlab
