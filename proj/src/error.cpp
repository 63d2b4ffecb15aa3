#include "loopbu/error.hpp"

namespace loopbu {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DegenerateInput: return "DegenerateInput";
    case ErrorCode::AntipodalPair: return "AntipodalPair";
    case ErrorCode::DegenerateCircle: return "DegenerateCircle";
    case ErrorCode::BaseMismatch: return "BaseMismatch";
    case ErrorCode::GridMismatch: return "GridMismatch";
    case ErrorCode::InsufficientBasis: return "InsufficientBasis";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::InvalidInput: return "InvalidInput";
  }
  return "Unknown";
}

}  // namespace loopbu
