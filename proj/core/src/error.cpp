#include "cmczone/error.hpp"

namespace cmczone {

const char* to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::DomainExit: return "DomainExit";
        case ErrorCode::AxisContact: return "AxisContact";
        case ErrorCode::ModulusDomain: return "ModulusDomain";
        case ErrorCode::SingularModulus: return "SingularModulus";
        case ErrorCode::DomainError: return "DomainError";
        case ErrorCode::RadicandNegative: return "RadicandNegative";
        case ErrorCode::OutOfWindow: return "OutOfWindow";
        case ErrorCode::NoBracket: return "NoBracket";
        case ErrorCode::BeyondBulge: return "BeyondBulge";
        case ErrorCode::NoIntersection: return "NoIntersection";
        case ErrorCode::ConstraintViolation: return "ConstraintViolation";
        case ErrorCode::NoMatch: return "NoMatch";
        case ErrorCode::VerificationFailure: return "VerificationFailure";
        case ErrorCode::SearchExhausted: return "SearchExhausted";
        case ErrorCode::GlueFailure: return "GlueFailure";
        case ErrorCode::WindowFailure: return "WindowFailure";
        case ErrorCode::CrossingNotFound: return "CrossingNotFound";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

void fail(ErrorCode code, const std::string& message) { throw Error(code, message); }

}  // namespace cmczone
