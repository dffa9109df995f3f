#include "gaia/error.hpp"

namespace gaia {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::NonPositiveParameter: return "NonPositiveParameter";
        case ErrorCode::DuplicateOffset: return "DuplicateOffset";
        case ErrorCode::RealityViolation: return "RealityViolation";
        case ErrorCode::DegenerateOffset: return "DegenerateOffset";
        case ErrorCode::DegenerateCrossing: return "DegenerateCrossing";
        case ErrorCode::ShapeMismatch: return "ShapeMismatch";
        case ErrorCode::NonHermitianInput: return "NonHermitianInput";
        case ErrorCode::BranchTrackingFailure: return "BranchTrackingFailure";
        case ErrorCode::StepLimitExceeded: return "StepLimitExceeded";
    }
    return "Unknown";
}

bool is_validation_error(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidArgument:
        case ErrorCode::NonPositiveParameter:
        case ErrorCode::DuplicateOffset:
        case ErrorCode::RealityViolation:
        case ErrorCode::DegenerateOffset:
        case ErrorCode::DegenerateCrossing:
        case ErrorCode::ShapeMismatch:
        case ErrorCode::NonHermitianInput:
            return true;
        default:
            return false;
    }
}

}  // namespace gaia
