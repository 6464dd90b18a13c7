#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dualmat {

enum class ErrorCode {
  dimension_mismatch,
  not_square,
  singular_standard_part,
  infinitesimal_division,
  negative_or_infinitesimal_sqrt,
  convergence_failure,
  degenerate_coupling,
  invalid_argument,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

  /// True for failures of the numerical kernels, as opposed to bad input.
  bool is_numerical() const noexcept {
    return code_ == ErrorCode::convergence_failure ||
           code_ == ErrorCode::degenerate_coupling;
  }

 private:
  ErrorCode code_;
};

}  // namespace dualmat
