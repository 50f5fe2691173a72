#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace thermo {

enum class ErrorCode {
  // symbolic-core
  NonSquare,
  BadEntry,
  StrandedSymbol,
  Overflow,
  MissingEntry,
  ExtraEntry,
  NonFinite,
  TooShort,
  Inadmissible,
  // transfer-spectral
  DepthTooLarge,
  NotPrimitive,
  NoConvergence,
  DegenerateEigenvector,
  DepthMismatch,
  UnsupportedTransition,
  NoDecay,
  // convex-duality
  DegenerateRange,
  OutOfRange,
  TooCloseToBoundary,
  // phase-analysis
  PeriodicComponent,
  NoCoexistence,
  // generic argument / input problems
  InvalidInput,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above so
/// callers (the CLI in particular) can map it onto an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// True for failures of an iterative numerical method, as opposed to bad input.
inline bool is_numerical_failure(ErrorCode code) noexcept {
  return code == ErrorCode::NoConvergence || code == ErrorCode::NoDecay ||
         code == ErrorCode::DegenerateEigenvector;
}

}  // namespace thermo
