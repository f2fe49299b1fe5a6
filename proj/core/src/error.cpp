#include "specsbm/error.hpp"

namespace specsbm {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kNonFinite: return "NonFinite";
    case ErrorCode::kNoConvergence: return "NoConvergence";
    case ErrorCode::kRankDeficient: return "RankDeficient";
    case ErrorCode::kDegenerateBlock: return "DegenerateBlock";
    case ErrorCode::kSingularDegree: return "SingularDegree";
    case ErrorCode::kProbOutOfRange: return "ProbOutOfRange";
    case ErrorCode::kMissingTheta: return "MissingTheta";
    case ErrorCode::kTooFewPoints: return "TooFewPoints";
    case ErrorCode::kEmptySet: return "EmptySet";
    case ErrorCode::kDegenerateGrid: return "DegenerateGrid";
    case ErrorCode::kEmptyCluster: return "EmptyCluster";
    case ErrorCode::kZeroCommunityDegree: return "ZeroCommunityDegree";
    case ErrorCode::kAllInfinite: return "AllInfinite";
    case ErrorCode::kLengthMismatch: return "LengthMismatch";
    case ErrorCode::kMissingCell: return "MissingCell";
    case ErrorCode::kParse: return "Parse";
    case ErrorCode::kIo: return "Io";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

}  // namespace specsbm
