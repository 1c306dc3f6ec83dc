#pragma once

#include <stdexcept>
#include <string>

namespace hmrkit {

// Numeric values are part of the C API and the CLI error objects.
enum class ErrorCode : int {
  InvalidArgument = 1,
  MalformedJson = 2,
  ShapeMismatch = 10,
  GradingViolation = 11,
  CompositionNonzero = 12,
  DegenerateSpectrum = 20,
  StepTooLarge = 21,
  MalformedOrbitMap = 30,
  NotChainMap = 31,
  NotCocycle = 32,
  NoRealStructure = 33,
  NotDivisibleBy8 = 40,
  OddPairing = 41,
  NotCoprime = 50,
  UnknownFamily = 51,
  AmbiguousDifferential = 52,
  Io = 60,
  Internal = 99
};

const char* error_name(ErrorCode code);

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& msg) : std::runtime_error(msg), code_(code) {}
  ErrorCode code() const { return code_; }

private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& msg) { throw Error(code, msg); }

}
