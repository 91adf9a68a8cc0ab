#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace pfront {

enum class ErrorCode {
  // model
  RejectedP2,
  RejectedSignB,
  RejectedRange,
  OutOfDomain,
  // closed_form
  BeyondHorizon,
  OutsideDomain,
  TooCloseToKink,
  // profile
  NoBracket,
  StiffFailure,
  // pde
  UnstableStep,
  InterfaceAtBoundary,
  SnapshotSkew,
  // analysis
  InsufficientData,
  MixedSign,
  CurveOutsideGrid,
  DomainMismatch,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every recoverable failure in the library is reported through this type.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail);

  [[nodiscard]] ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace pfront
