#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace fibertop {

enum class ErrorCode : int {
  kInvalidArgument = 1,
  kMissingEmptyOrFull,
  kNotClosedUnderUnion,
  kNotClosedUnderIntersection,
  kNotContinuous,
  kNotOpen,
  kCapExceeded,
  kPreconditionGap,
  kMemberNotFContinuous,
  kNotDisjoint,
  kNotCovering,
  kPrefixNotClosed,
  kCondition2Violated,
  kInvalidPartition,
  kNeighborhoodNotNested,
  kCoherenceViolated,
  kLevelNotRegular,
  kDepthExceeded,
  kHypothesisFailed,
  kSearchFailed,
  kNotFound,
  kCheckFailed,
  kPreconditionNotFContinuous,
  kMaxIterReached,
  kSyntaxError,
  kValidationError,
  kPrecondition,
};

const char* error_code_name(ErrorCode code);

// Carries a machine-readable witness in `detail` (bitmasks, indices), the
// meaning of which depends on the code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what, std::vector<std::int64_t> detail = {})
      : std::runtime_error(what), code_(code), detail_(std::move(detail)) {}

  ErrorCode code() const noexcept { return code_; }
  const std::vector<std::int64_t>& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::vector<std::int64_t> detail_;
};

}  // namespace fibertop
