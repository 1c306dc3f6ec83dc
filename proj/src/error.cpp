#include "hmrkit/error.hpp"

namespace hmrkit {

const char* error_name(ErrorCode code)
{
  switch (code) {
  case ErrorCode::InvalidArgument: return "InvalidArgument";
  case ErrorCode::MalformedJson: return "MalformedJson";
  case ErrorCode::ShapeMismatch: return "ShapeMismatch";
  case ErrorCode::GradingViolation: return "GradingViolation";
  case ErrorCode::CompositionNonzero: return "CompositionNonzero";
  case ErrorCode::DegenerateSpectrum: return "DegenerateSpectrum";
  case ErrorCode::StepTooLarge: return "StepTooLarge";
  case ErrorCode::MalformedOrbitMap: return "MalformedOrbitMap";
  case ErrorCode::NotChainMap: return "NotChainMap";
  case ErrorCode::NotCocycle: return "NotCocycle";
  case ErrorCode::NoRealStructure: return "NoRealStructure";
  case ErrorCode::NotDivisibleBy8: return "NotDivisibleBy8";
  case ErrorCode::OddPairing: return "OddPairing";
  case ErrorCode::NotCoprime: return "NotCoprime";
  case ErrorCode::UnknownFamily: return "UnknownFamily";
  case ErrorCode::AmbiguousDifferential: return "AmbiguousDifferential";
  case ErrorCode::Io: return "Io";
  case ErrorCode::Internal: return "Internal";
  }
  return "Unknown";
}

}
