#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace condenser {

enum class ErrorKind {
  InvalidInput,
  UnsupportedDomain,
  UnsupportedShape,
  UnsupportedComparison,
  Geometry,
  NumericFailure,
  PreconditionFailed,
  Io,
};

std::string_view to_string(ErrorKind kind) noexcept;

// Single exception type for the library; `kind()` drives CLI exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

inline void require(bool condition, ErrorKind kind, const std::string& what) {
  if (!condition) fail(kind, what);
}

}  // namespace condenser
