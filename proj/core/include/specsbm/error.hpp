#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace specsbm {

enum class ErrorCode {
  kInvalidArgument,
  kNonFinite,
  kNoConvergence,
  kRankDeficient,
  kDegenerateBlock,
  kSingularDegree,
  kProbOutOfRange,
  kMissingTheta,
  kTooFewPoints,
  kEmptySet,
  kDegenerateGrid,
  kEmptyCluster,
  kZeroCommunityDegree,
  kAllInfinite,
  kLengthMismatch,
  kMissingCell,
  kParse,
  kIo,
};

std::string_view to_string(ErrorCode code) noexcept;

// All library failures are reported through this exception; callers switch on
// code() rather than parsing the message.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace specsbm
