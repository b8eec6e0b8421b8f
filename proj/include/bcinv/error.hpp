#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace bcinv {

enum class ErrorKind {
  RingMismatch,
  DimensionMismatch,
  NotInvertible,
  NotRegular,
  PreconditionFailed,
  InverseAbsent,
  SingularCorner,
  CapExceeded,
  SpectralPreconditionFailed,
  ConvergenceFailure,
  MethodUnavailable,
  ParseError,
  PropertyRefuted,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Every failure in the library is reported through this type; the kind
/// decides how the command line maps it to an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

inline void require(bool condition, ErrorKind kind, const std::string& what) {
  if (!condition) fail(kind, what);
}

inline std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::RingMismatch: return "RingMismatch";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NotInvertible: return "NotInvertible";
    case ErrorKind::NotRegular: return "NotRegular";
    case ErrorKind::PreconditionFailed: return "PreconditionFailed";
    case ErrorKind::InverseAbsent: return "InverseAbsent";
    case ErrorKind::SingularCorner: return "SingularCorner";
    case ErrorKind::CapExceeded: return "CapExceeded";
    case ErrorKind::SpectralPreconditionFailed: return "SpectralPreconditionFailed";
    case ErrorKind::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorKind::MethodUnavailable: return "MethodUnavailable";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::PropertyRefuted: return "PropertyRefuted";
  }
  return "Unknown";
}

}  // namespace bcinv
