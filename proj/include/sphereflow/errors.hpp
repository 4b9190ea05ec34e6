#pragma once

#include <stdexcept>
#include <string>

namespace sphereflow {

enum class ErrorCode {
  kInvalidSpec,
  kDomainError,
  kUnderResolvedGrid,
  kSymmetryViolation,
  kGaussConstraintViolated,
  kGridMismatch,
  kPoleSingularity,
  kInvalidParams,
  kNonpositivePhi,
  kNonMonotoneProfile,
  kInstabilityDetected,
  kIoError,
  kInvalidConfig,
};

const char* to_string(ErrorCode code);

/// Single exception type for the library; `code()` tells callers which
/// contract was broken.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace sphereflow
