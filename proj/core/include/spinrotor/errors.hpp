#pragma once

#include <stdexcept>
#include <string>

namespace spinrotor {

enum class ErrorCode {
  ConfigError,        // bad or inconsistent input parameters
  RadiusBound,        // r^2 Omega^2 >= 1
  UnsupportedParameter,
  FrameMismatch,      // event/spin tagged with the wrong frame or radius
  SingularMap,        // kinematic map denominator vanished
  DomainError,        // generic numeric-domain violation
  DegeneratePair,     // near-degenerate root pair not resolvable
  NonNormalizable,    // Gaussian envelope does not decay
  IoError,
  Usage,
};

const char* error_code_name(ErrorCode c);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& msg)
      : std::runtime_error(msg), code_(code) {}

  ErrorCode code() const { return code_; }
  const char* code_name() const { return error_code_name(code_); }

 private:
  ErrorCode code_;
};

}  // namespace spinrotor
