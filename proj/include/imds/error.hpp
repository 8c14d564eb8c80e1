#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace imds {

enum class ErrorCode {
  invalid_degree,
  invalid_polynomial,
  reducible_polynomial,
  invalid_element,
  division_by_zero,
  singular_matrix,
  singular_block,
  not_involutory,
  not_mds,
  budget_exceeded,
  corrupt_checkpoint,
  version_mismatch,
  checkpoint_io,
  parse_error,
  invariant_violation,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every recoverable failure in the library is reported as an imds::Error
/// carrying a machine-checkable code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace imds
