#pragma once

#include <stdexcept>
#include <string>

namespace qsdpnal {

enum class ErrorCode {
  InvalidInput,
  InvalidConfig,
  IndefiniteOperator,
  LineSearchFailure,
  Phase1Stalled,
  Io,
  Parse,
};

const char* to_string(ErrorCode code);

/// Exception carrying a machine-readable failure category.
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

inline void require(bool cond, ErrorCode code, const char* what) {
  if (!cond) throw Error(code, what);
}

}  // namespace qsdpnal
