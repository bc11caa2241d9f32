#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace pfforge {

/// Machine-readable failure categories. The CLI prints `error: <code>: <message>`.
enum class ErrorCode {
  index_out_of_window,
  parameter_out_of_range,
  budget_exceeded,
  window_mismatch,
  infeasible,
  malformed_polyline,
  domain_invalid,
  geometry_degenerate,
  tail_condition_unsatisfiable,
  nonpositive_T,
  zero_coefficient,
  nonpositive_input,
  parse_error,
  io_error,
};

std::string_view error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace pfforge
