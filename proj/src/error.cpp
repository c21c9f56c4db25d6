#include "entire_dynamics/error.hpp"

namespace ed {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NonConvergence: return "NonConvergence";
    case ErrorCode::DerivativeUnderflow: return "DerivativeUnderflow";
    case ErrorCode::PrecisionLoss: return "PrecisionLoss";
    case ErrorCode::RNotExpanding: return "RNotExpanding";
    case ErrorCode::NotFound: return "NotFound";
    case ErrorCode::PointInSet: return "PointInSet";
    case ErrorCode::EmptySet: return "EmptySet";
    case ErrorCode::Config: return "Config";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

}  // namespace ed
