#pragma once

#include <stdexcept>
#include <string>

namespace pdtkit {

enum class ErrorCode {
  invalid_argument,
  not_boolean,
  dimension_mismatch,
  invalid_eta,
  dependent_input,
  zero_direction,
  dependent_constraints,
  not_found,
  constant_input,
  invalid_tree,
  too_large,
  invalid_spec,
  zero_density,
  invalid_degree,
  parse_error,
  overflow,
};

const char* error_code_name(ErrorCode code) noexcept;

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

}  // namespace pdtkit
