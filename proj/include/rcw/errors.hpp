#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace rcw {

/// Failure categories surfaced by the library. The CLI maps them onto exit codes.
enum class ErrorKind {
  InvalidArgument,
  RootFinding,
  Gcd,
  Resultant,
  NoncompactRealPole,
  NoncompactAtInfinity,
  CuspOnRealLocus,
  AuditFailure,
  WindingNonIntegral,
  GenericityNotFound,
  InternalMismatch,
  BasePoint,
  RealPointAtInfinity,
  CensusMismatch,
  LedgerViolation,
  DegenerateSample,
  GenerationExhausted,
  Parse,
  Io,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace rcw
