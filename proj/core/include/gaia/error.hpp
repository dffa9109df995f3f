#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gaia {

enum class ErrorCode {
    InvalidArgument,
    NonPositiveParameter,
    DuplicateOffset,
    RealityViolation,
    DegenerateOffset,
    DegenerateCrossing,
    ShapeMismatch,
    NonHermitianInput,
    BranchTrackingFailure,
    StepLimitExceeded,
};

std::string_view to_string(ErrorCode code);

// Validation errors come from bad inputs; the rest are runtime failures.
bool is_validation_error(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace gaia
