#include "gptinfo/error.hpp"

namespace gptinfo {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::AllZero: return "AllZero";
    case ErrorCode::NegativeWeight: return "NegativeWeight";
    case ErrorCode::NotNormalized: return "NotNormalized";
    case ErrorCode::BadParameter: return "BadParameter";
    case ErrorCode::InvalidPair: return "InvalidPair";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::InvalidState: return "InvalidState";
    case ErrorCode::InvalidMeasurement: return "InvalidMeasurement";
    case ErrorCode::DegenerateModel: return "DegenerateModel";
    case ErrorCode::NotAState: return "NotAState";
    case ErrorCode::InfeasibleDecomposition: return "InfeasibleDecomposition";
    case ErrorCode::IncompleteFrame: return "IncompleteFrame";
    case ErrorCode::SpectrumUndefined: return "SpectrumUndefined";
    case ErrorCode::NoFrames: return "NoFrames";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::InvalidInput: return "InvalidInput";
  }
  return "Unknown";
}

}  // namespace gptinfo
