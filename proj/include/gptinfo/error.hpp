#pragma once

#include <stdexcept>
#include <string>

namespace gptinfo {

enum class ErrorCode {
  AllZero,
  NegativeWeight,
  NotNormalized,
  BadParameter,
  InvalidPair,
  DimensionMismatch,
  InvalidState,
  InvalidMeasurement,
  DegenerateModel,
  NotAState,
  InfeasibleDecomposition,
  IncompleteFrame,
  SpectrumUndefined,
  NoFrames,
  TooLarge,
  InvalidInput,
};

const char* to_string(ErrorCode code) noexcept;

// Every validation failure in the library surfaces as this exception type.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace gptinfo
