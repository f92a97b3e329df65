#pragma once

#include <stdexcept>
#include <string>

namespace cmczone {

enum class ErrorCode {
    DomainExit,
    AxisContact,
    ModulusDomain,
    SingularModulus,
    DomainError,
    RadicandNegative,
    OutOfWindow,
    NoBracket,
    BeyondBulge,
    NoIntersection,
    ConstraintViolation,
    NoMatch,
    VerificationFailure,
    SearchExhausted,
    GlueFailure,
    WindowFailure,
    CrossingNotFound,
};

const char* to_string(ErrorCode code) noexcept;

// Single exception type for the library; the code tells callers what went wrong.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message);
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& message);

}  // namespace cmczone
