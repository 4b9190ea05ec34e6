#include "sphereflow/errors.hpp"

namespace sphereflow {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidSpec: return "invalid-spec";
    case ErrorCode::kDomainError: return "domain-error";
    case ErrorCode::kUnderResolvedGrid: return "under-resolved-grid";
    case ErrorCode::kSymmetryViolation: return "symmetry-violation";
    case ErrorCode::kGaussConstraintViolated: return "gauss-constraint-violated";
    case ErrorCode::kGridMismatch: return "grid-mismatch";
    case ErrorCode::kPoleSingularity: return "pole-singularity";
    case ErrorCode::kInvalidParams: return "invalid-params";
    case ErrorCode::kNonpositivePhi: return "nonpositive-phi";
    case ErrorCode::kNonMonotoneProfile: return "non-monotone-profile";
    case ErrorCode::kInstabilityDetected: return "instability-detected";
    case ErrorCode::kIoError: return "io-error";
    case ErrorCode::kInvalidConfig: return "invalid-config";
  }
  return "unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

}  // namespace sphereflow
