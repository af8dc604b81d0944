#pragma once
#include <stdexcept>
#include <string>

namespace qdyn {

// Every failure mode surfaced by the library. The CLI maps UsageError to
// exit 2 and everything else to exit 1, printing the enum name.
enum class Err {
  NoConvergence,
  DerivativeVanishes,
  NotPeriodic,
  ParabolicOrbit,
  BranchTie,
  ContractionLost,
  NotConverged,
  ZeroInput,
  CapExceeded,
  DegenerateSolution,
  NotRepelling,
  OutOfDomain,
  EmptyWindow,
  AllPointsFiltered,
  EmptyCloud,
  NoRepellingSeed,
  InconsistentLimit,
  BranchJump,
  PrecisionTooLow,
  NonFinite,
  UsageError,
};

const char* err_name(Err e);

class Error : public std::runtime_error {
public:
  Error(Err code, const std::string& msg)
      : std::runtime_error(std::string(err_name(code)) + ": " + msg), code_(code) {}
  Err code() const { return code_; }

private:
  Err code_;
};

[[noreturn]] inline void fail(Err code, const std::string& msg) { throw Error(code, msg); }

} // namespace qdyn
