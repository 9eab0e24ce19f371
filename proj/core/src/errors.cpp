#include "spinrotor/errors.hpp"

namespace spinrotor {

const char* error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::ConfigError: return "config_error";
    case ErrorCode::RadiusBound: return "radius_bound";
    case ErrorCode::UnsupportedParameter: return "unsupported_parameter";
    case ErrorCode::FrameMismatch: return "frame_mismatch";
    case ErrorCode::SingularMap: return "singular_map";
    case ErrorCode::DomainError: return "domain_error";
    case ErrorCode::DegeneratePair: return "degenerate_pair";
    case ErrorCode::NonNormalizable: return "non_normalizable";
    case ErrorCode::IoError: return "io_error";
    case ErrorCode::Usage: return "usage";
  }
  return "unknown";
}

}  // namespace spinrotor
