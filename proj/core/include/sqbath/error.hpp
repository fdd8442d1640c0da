#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sqbath {

enum class ErrorCode {
  // matkernel
  NonFinite,
  DimensionMismatch,
  NotHermitian,
  NoConvergence,
  NotPSD,
  // model
  InvalidBath,
  DegenerateBasis,
  InvalidEpsilon,
  InvalidCustom,
  InvalidState,
  // dynamics
  InvalidSettings,
  StiffStepRejected,
  PositivityLost,
  UnsupportedSpec,
  UnsupportedBath,
  SingularBath,
  ValidationFailed,
  // entanglement
  NotNormalized,
  NotXState,
  PatternMismatch,
  // events
  InsufficientResolution,
  InvalidArgument,
};

std::string_view to_string(ErrorCode code) noexcept;

/// True for errors caused by bad user input rather than by a numerical failure.
/// The CLI maps these to exit code 2 and everything else to exit code 3.
bool is_config_error(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Raised by the general-solution gate; carries the largest entrywise deviation from
/// the exact propagator.
class ValidationError : public Error {
 public:
  ValidationError(const std::string& what, double max_deviation)
      : Error(ErrorCode::ValidationFailed, what), max_deviation_(max_deviation) {}

  double max_deviation() const noexcept { return max_deviation_; }

 private:
  double max_deviation_;
};

}  // namespace sqbath
