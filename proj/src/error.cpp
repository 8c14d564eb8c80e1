#include "imds/error.hpp"

namespace imds {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::invalid_degree: return "InvalidDegree";
    case ErrorCode::invalid_polynomial: return "InvalidPolynomial";
    case ErrorCode::reducible_polynomial: return "ReduciblePolynomial";
    case ErrorCode::invalid_element: return "InvalidElement";
    case ErrorCode::division_by_zero: return "DivisionByZero";
    case ErrorCode::singular_matrix: return "SingularMatrix";
    case ErrorCode::singular_block: return "SingularBlock";
    case ErrorCode::not_involutory: return "NotInvolutory";
    case ErrorCode::not_mds: return "NotMds";
    case ErrorCode::budget_exceeded: return "BudgetExceeded";
    case ErrorCode::corrupt_checkpoint: return "CorruptCheckpoint";
    case ErrorCode::version_mismatch: return "VersionMismatch";
    case ErrorCode::checkpoint_io: return "CheckpointIo";
    case ErrorCode::parse_error: return "ParseError";
    case ErrorCode::invariant_violation: return "InvariantViolation";
  }
  return "Unknown";
}

}  // namespace imds
