#include "condenser/error.hpp"

namespace condenser {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidInput: return "invalid-input";
    case ErrorKind::UnsupportedDomain: return "unsupported-domain";
    case ErrorKind::UnsupportedShape: return "unsupported-shape";
    case ErrorKind::UnsupportedComparison: return "unsupported-comparison";
    case ErrorKind::Geometry: return "geometry";
    case ErrorKind::NumericFailure: return "numeric-failure";
    case ErrorKind::PreconditionFailed: return "precondition-failed";
    case ErrorKind::Io: return "io";
  }
  return "unknown";
}

}  // namespace condenser
