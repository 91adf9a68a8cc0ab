#include "pfront/error.hpp"

namespace pfront {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::RejectedP2: return "RejectedP2";
    case ErrorCode::RejectedSignB: return "RejectedSignB";
    case ErrorCode::RejectedRange: return "RejectedRange";
    case ErrorCode::OutOfDomain: return "OutOfDomain";
    case ErrorCode::BeyondHorizon: return "BeyondHorizon";
    case ErrorCode::OutsideDomain: return "OutsideDomain";
    case ErrorCode::TooCloseToKink: return "TooCloseToKink";
    case ErrorCode::NoBracket: return "NoBracket";
    case ErrorCode::StiffFailure: return "StiffFailure";
    case ErrorCode::UnstableStep: return "UnstableStep";
    case ErrorCode::InterfaceAtBoundary: return "InterfaceAtBoundary";
    case ErrorCode::SnapshotSkew: return "SnapshotSkew";
    case ErrorCode::InsufficientData: return "InsufficientData";
    case ErrorCode::MixedSign: return "MixedSign";
    case ErrorCode::CurveOutsideGrid: return "CurveOutsideGrid";
    case ErrorCode::DomainMismatch: return "DomainMismatch";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& detail)
    : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

}  // namespace pfront
