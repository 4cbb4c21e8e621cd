#pragma once

#include <stdexcept>
#include <string>

namespace wlc {

enum class ErrorCode {
  InvalidArgument,
  NotOnResonance,
  OscillationThreshold,
  NoPositiveRoot,
  PeakAtEdge,
  NoHalfMaxCrossing,
  Infeasible,
  ParseError,
  ValidationError,
  IoError,
};

const char* to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above so the
/// C API can map it onto a status value without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

inline void require(bool cond, const std::string& what) {
  if (!cond) fail(ErrorCode::InvalidArgument, what);
}

}  // namespace wlc
