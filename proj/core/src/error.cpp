#include "sqbath/error.hpp"

namespace sqbath {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::NotPSD: return "NotPSD";
    case ErrorCode::InvalidBath: return "InvalidBath";
    case ErrorCode::DegenerateBasis: return "DegenerateBasis";
    case ErrorCode::InvalidEpsilon: return "InvalidEpsilon";
    case ErrorCode::InvalidCustom: return "InvalidCustom";
    case ErrorCode::InvalidState: return "InvalidState";
    case ErrorCode::InvalidSettings: return "InvalidSettings";
    case ErrorCode::StiffStepRejected: return "StiffStepRejected";
    case ErrorCode::PositivityLost: return "PositivityLost";
    case ErrorCode::UnsupportedSpec: return "UnsupportedSpec";
    case ErrorCode::UnsupportedBath: return "UnsupportedBath";
    case ErrorCode::SingularBath: return "SingularBath";
    case ErrorCode::ValidationFailed: return "ValidationFailed";
    case ErrorCode::NotNormalized: return "NotNormalized";
    case ErrorCode::NotXState: return "NotXState";
    case ErrorCode::PatternMismatch: return "PatternMismatch";
    case ErrorCode::InsufficientResolution: return "InsufficientResolution";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

bool is_config_error(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidBath:
    case ErrorCode::InvalidEpsilon:
    case ErrorCode::InvalidCustom:
    case ErrorCode::InvalidSettings:
    case ErrorCode::StiffStepRejected:
    case ErrorCode::UnsupportedSpec:
    case ErrorCode::UnsupportedBath:
    case ErrorCode::SingularBath:
    case ErrorCode::InvalidArgument:
      return true;
    default:
      return false;
  }
}

}  // namespace sqbath
