#include "synergy/error.hpp"

namespace synergy {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::SymmetryViolation: return "SymmetryViolation";
    case ErrorCode::NotSolenoidal: return "NotSolenoidal";
    case ErrorCode::GridMismatch: return "GridMismatch";
    case ErrorCode::TimeGridMismatch: return "TimeGridMismatch";
    case ErrorCode::CflViolation: return "CflViolation";
    case ErrorCode::BadCutoff: return "BadCutoff";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::ZeroField: return "ZeroField";
    case ErrorCode::SupportViolation: return "SupportViolation";
    case ErrorCode::TooFewSnapshots: return "TooFewSnapshots";
    case ErrorCode::NonSolenoidalTest: return "NonSolenoidalTest";
    case ErrorCode::DegenerateSequence: return "DegenerateSequence";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::RangeError: return "RangeError";
    case ErrorCode::NumericalAbort: return "NumericalAbort";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace synergy
