#ifndef STOKESBI_ERRORS_HPP
#define STOKESBI_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace stokesbi {

enum class ErrorCode {
  invalid_input,
  numerical_singularity,
  geometry_degeneracy,
  map_degeneracy,
  solver_failure,
  resampling_failure,
  invalid_shape,
  frame_collapse,
  blow_up,
  config_error,
  io_error,
};

/// Library-wide exception type. The code distinguishes configuration
/// mistakes (CLI exit 2) from runtime failures (CLI exit 3).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline const char* error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::invalid_input: return "invalid_input";
    case ErrorCode::numerical_singularity: return "numerical_singularity";
    case ErrorCode::geometry_degeneracy: return "geometry_degeneracy";
    case ErrorCode::map_degeneracy: return "map_degeneracy";
    case ErrorCode::solver_failure: return "solver_failure";
    case ErrorCode::resampling_failure: return "resampling_failure";
    case ErrorCode::invalid_shape: return "invalid_shape";
    case ErrorCode::frame_collapse: return "frame_collapse";
    case ErrorCode::blow_up: return "blow_up";
    case ErrorCode::config_error: return "config_error";
    case ErrorCode::io_error: return "io_error";
  }
  return "unknown";
}

}  // namespace stokesbi

#endif
