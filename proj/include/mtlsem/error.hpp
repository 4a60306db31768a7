#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace mtlsem {

enum class ErrorKind {
  Syntax,
  UnknownAtom,
  BetaOutsideMtlBeta,
  BetaNotInPw,
  BetaNotInItw,
  Empty,
  NonMonotone,
  FirstTimestampNonZero,
  AdjacencyViolation,
  InvalidInterval,
  OutOfDomain,
  PositionOutOfRange,
  IndexOutOfRange,
  SeamStutter,
  InvalidLasso,
  NotInDomain,
  Overflow,
  InvariantViolation,
};

inline const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::Syntax: return "SyntaxError";
    case ErrorKind::UnknownAtom: return "UnknownAtom";
    case ErrorKind::BetaOutsideMtlBeta: return "BetaOutsideMtlBeta";
    case ErrorKind::BetaNotInPw: return "BetaNotInPw";
    case ErrorKind::BetaNotInItw: return "BetaNotInItw";
    case ErrorKind::Empty: return "Empty";
    case ErrorKind::NonMonotone: return "NonMonotone";
    case ErrorKind::FirstTimestampNonZero: return "FirstTimestampNonZero";
    case ErrorKind::AdjacencyViolation: return "AdjacencyViolation";
    case ErrorKind::InvalidInterval: return "InvalidInterval";
    case ErrorKind::OutOfDomain: return "OutOfDomain";
    case ErrorKind::PositionOutOfRange: return "PositionOutOfRange";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::SeamStutter: return "SeamStutter";
    case ErrorKind::InvalidLasso: return "InvalidLasso";
    case ErrorKind::NotInDomain: return "NotInDomain";
    case ErrorKind::Overflow: return "Overflow";
    case ErrorKind::InvariantViolation: return "InvariantViolation";
  }
  return "Unknown";
}

/// Single exception type for every recoverable failure in the library.
/// `position` carries the offending index (word position, step, or
/// character offset) when the failure has one.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message,
        std::optional<std::size_t> position = std::nullopt)
      : std::runtime_error(std::string(to_string(kind)) +
                           (position ? "(" + std::to_string(*position) + ")" : "") +
                           ": " + message),
        kind_(kind),
        position_(position) {}

  ErrorKind kind() const noexcept { return kind_; }
  std::optional<std::size_t> position() const noexcept { return position_; }

  /// Input-side problems map to CLI exit code 3, broken invariants to 4.
  bool is_internal() const noexcept {
    return kind_ == ErrorKind::InvariantViolation || kind_ == ErrorKind::Overflow;
  }

 private:
  ErrorKind kind_;
  std::optional<std::size_t> position_;
};

}  // namespace mtlsem
