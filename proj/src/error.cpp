#include "wlc/error.hpp"

namespace wlc {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NotOnResonance: return "NotOnResonance";
    case ErrorCode::OscillationThreshold: return "OscillationThreshold";
    case ErrorCode::NoPositiveRoot: return "NoPositiveRoot";
    case ErrorCode::PeakAtEdge: return "PeakAtEdge";
    case ErrorCode::NoHalfMaxCrossing: return "NoHalfMaxCrossing";
    case ErrorCode::Infeasible: return "Infeasible";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ValidationError: return "ValidationError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace wlc
