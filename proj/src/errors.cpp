#include "sl2c/errors.hpp"

namespace sl2c {

std::string_view kind_name(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::PoleAtArgument: return "PoleAtArgument";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::ParityViolation: return "ParityViolation";
    case ErrorKind::CoincidentPoints: return "CoincidentPoints";
    case ErrorKind::NonIntegrableSingularity: return "NonIntegrableSingularity";
    case ErrorKind::InsufficientDecay: return "InsufficientDecay";
    case ErrorKind::UniquenessViolation: return "UniquenessViolation";
    case ErrorKind::ContourPinch: return "ContourPinch";
    case ErrorKind::TruncationNotConverged: return "TruncationNotConverged";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace sl2c
