#pragma once

#include <stdexcept>
#include <string>

namespace gtbv {

enum class ErrorCode {
    MalformedSkeleton,
    UnknownEdge,
    UnknownVertex,
    IllegalSlide,
    IllegalFusion,
    NonComposablePath,
    NonClosedWord,
    ProperPowerUnsupported,
    NonInvertibleBody,
    LogdetNotEvaluable,
    JacobiViolation,
    DimensionMismatch,
    GeneratorBudgetExceeded,
    RetryExhausted,
    ParseError,
    UnknownSuite,
    BadArgument,
};

inline const char* error_code_name(ErrorCode c) {
    switch (c) {
        case ErrorCode::MalformedSkeleton: return "MalformedSkeleton";
        case ErrorCode::UnknownEdge: return "UnknownEdge";
        case ErrorCode::UnknownVertex: return "UnknownVertex";
        case ErrorCode::IllegalSlide: return "IllegalSlide";
        case ErrorCode::IllegalFusion: return "IllegalFusion";
        case ErrorCode::NonComposablePath: return "NonComposablePath";
        case ErrorCode::NonClosedWord: return "NonClosedWord";
        case ErrorCode::ProperPowerUnsupported: return "ProperPowerUnsupported";
        case ErrorCode::NonInvertibleBody: return "NonInvertibleBody";
        case ErrorCode::LogdetNotEvaluable: return "LogdetNotEvaluable";
        case ErrorCode::JacobiViolation: return "JacobiViolation";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::GeneratorBudgetExceeded: return "GeneratorBudgetExceeded";
        case ErrorCode::RetryExhausted: return "RetryExhausted";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::UnknownSuite: return "UnknownSuite";
        case ErrorCode::BadArgument: return "BadArgument";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& msg)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + msg), code_(code) {}

    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

// Parse failures carry the byte offset of the offending token.
class ParseError : public Error {
public:
    ParseError(const std::string& msg, std::size_t position)
        : Error(ErrorCode::ParseError, msg + " (at position " + std::to_string(position) + ")"),
          position_(position) {}

    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

}  // namespace gtbv
