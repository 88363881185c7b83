#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace miquel {

enum class ErrorCode {
  ZeroDenominator,
  ParseError,
  InvalidArgument,
  DegenerateLine,
  DegenerateCircle,
  CoincidentPoints,
  ParallelLines,
  CollinearPoints,
  SameCircle,
  ConcentricCircles,
  KnownPointNotOnCircles,
  KnownPointNotIncident,
  TangentContact,
  DuplicateLine,
  GeneralPositionViolation,
  ChainDegeneracy,
  DegenerateDraw,
  ExhaustedSampling,
};

std::string_view to_string(ErrorCode code);

// Every failure in the kernel is reported through this type; callers branch on
// code() rather than on the message text.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace miquel
