#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace twistmat {

enum class ErrorCode {
  parse_error,
  denominator_not_invertible,
  spec_mismatch,
  ideal_not_coprime,
  unsupported_spec,
  invalid_spec,
  index_out_of_pattern,
  not_a_unit,
  incompatible_quotient,
  too_large,
  incompatible_atom,
  kernel_not_invariant,
  bad_unit,
  ng_violated,
  parameter_not_fixed,
  precondition_unmet,
  not_an_automorphism,
};

std::string_view error_code_name(ErrorCode code);

// All library failures are reported through this one exception type; the code
// lets the CLI map failures onto exit statuses.
class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

}  // namespace twistmat
