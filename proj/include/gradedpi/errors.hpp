#ifndef GRADEDPI_ERRORS_HPP
#define GRADEDPI_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace gradedpi {

enum class ErrorCode {
    SpecMismatch,
    DivisionByZero,
    NoEmbedding,
    GroupMismatch,
    EmptySignature,
    GradingViolation,
    AlgebraMismatch,
    NotACocycle,
    FieldMismatch,
    CapExceeded,
    ModeMismatch,
    NotHomogeneous,
    NoUnit,
    NotGradedSimple,
    ShapeMismatch,
    ParseError,
    ConfigurationError,
    Internal,
};

inline const char* error_code_name(ErrorCode c) {
    switch (c) {
        case ErrorCode::SpecMismatch: return "SpecMismatch";
        case ErrorCode::DivisionByZero: return "DivisionByZero";
        case ErrorCode::NoEmbedding: return "NoEmbedding";
        case ErrorCode::GroupMismatch: return "GroupMismatch";
        case ErrorCode::EmptySignature: return "EmptySignature";
        case ErrorCode::GradingViolation: return "GradingViolation";
        case ErrorCode::AlgebraMismatch: return "AlgebraMismatch";
        case ErrorCode::NotACocycle: return "NotACocycle";
        case ErrorCode::FieldMismatch: return "FieldMismatch";
        case ErrorCode::CapExceeded: return "CapExceeded";
        case ErrorCode::ModeMismatch: return "ModeMismatch";
        case ErrorCode::NotHomogeneous: return "NotHomogeneous";
        case ErrorCode::NoUnit: return "NoUnit";
        case ErrorCode::NotGradedSimple: return "NotGradedSimple";
        case ErrorCode::ShapeMismatch: return "ShapeMismatch";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::ConfigurationError: return "ConfigurationError";
        case ErrorCode::Internal: return "Internal";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

} // namespace gradedpi

#endif
