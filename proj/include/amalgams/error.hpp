#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace amalgams {

enum class ErrorKind {
  CapExceeded,
  BudgetExceeded,
  DegreeMismatch,
  NotAHomomorphism,
  NotInjective,
  NotInvariant,
  NotNormal,
  ShapeMismatch,
  TypeMismatch,
  GraphMismatch,
  InvalidVertex,
  Disconnected,
  NotRigid,
  EndpointMismatch,
  SchemaError,
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::CapExceeded: return "CapExceeded";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::DegreeMismatch: return "DegreeMismatch";
    case ErrorKind::NotAHomomorphism: return "NotAHomomorphism";
    case ErrorKind::NotInjective: return "NotInjective";
    case ErrorKind::NotInvariant: return "NotInvariant";
    case ErrorKind::NotNormal: return "NotNormal";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::TypeMismatch: return "TypeMismatch";
    case ErrorKind::GraphMismatch: return "GraphMismatch";
    case ErrorKind::InvalidVertex: return "InvalidVertex";
    case ErrorKind::Disconnected: return "Disconnected";
    case ErrorKind::NotRigid: return "NotRigid";
    case ErrorKind::EndpointMismatch: return "EndpointMismatch";
    case ErrorKind::SchemaError: return "SchemaError";
  }
  return "Unknown";
}

/// All library failures are reported through this exception; `kind()` is the
/// stable machine-readable part, `what()` names the offending slot.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace amalgams
