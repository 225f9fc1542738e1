#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace potkit {

enum class ErrorKind {
  Domain,
  InsufficientData,
  NonConvergence,
  UnsupportedShape,
  DegenerateGrid,
  RegularityViolation,
  NonPositiveVariance,
  InvalidSpec,
  FileUnreadable,
  SchemaMismatch,
  EmptyAfterParse,
  YearAbsent,
  Validation,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Domain: return "domain error";
    case ErrorKind::InsufficientData: return "insufficient data";
    case ErrorKind::NonConvergence: return "non-convergence";
    case ErrorKind::UnsupportedShape: return "unsupported shape";
    case ErrorKind::DegenerateGrid: return "degenerate grid";
    case ErrorKind::RegularityViolation: return "regularity violation";
    case ErrorKind::NonPositiveVariance: return "non-positive variance";
    case ErrorKind::InvalidSpec: return "invalid spec";
    case ErrorKind::FileUnreadable: return "file unreadable";
    case ErrorKind::SchemaMismatch: return "schema mismatch";
    case ErrorKind::EmptyAfterParse: return "empty after parse";
    case ErrorKind::YearAbsent: return "year absent";
    case ErrorKind::Validation: return "validation error";
  }
  return "error";
}

// Every failure raised by the library carries a kind so callers (the CLI in
// particular) can map it to a stable exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace potkit
