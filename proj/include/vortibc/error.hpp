#pragma once

#include <stdexcept>
#include <string>

namespace vortibc {

enum class ErrorCode {
  InvalidSpec,
  ResolutionTooLow,
  NoBoundary,
  MissingTimeDerivative,
  BCViolation,
  DegenerateInput,
  IncompatibleData,
  SolverDiverged,
  LinearSolveFailed,
  BCEnforcementFailed,
  CFLViolation,
  NoContraction,
  MaxIterExceeded,
  CirculationSystemSingular,
  PartialSweep,
  ConfigError,
  IOError,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace vortibc
