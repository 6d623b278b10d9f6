#pragma once

#include <stdexcept>
#include <string>

namespace lensgrid {

enum class ErrorCode {
    Parse,
    GcdViolation,
    RangeViolation,
    NotBijection,
    InvalidMarking,
    PatternAbsent,
    MinimumSize,
    Interleaved,
    BadRoutingLength,
    SlopeOutOfRange,
    TangentialCrossing,
    NotPlanarSupported,
    SameComponent,
    BadParams,
    SingularInput,
    DimensionMismatch,
    NotAKnot,
    OrderNotP,
};

inline const char* to_string(ErrorCode c) {
    switch (c) {
        case ErrorCode::Parse: return "Parse";
        case ErrorCode::GcdViolation: return "GcdViolation";
        case ErrorCode::RangeViolation: return "RangeViolation";
        case ErrorCode::NotBijection: return "NotBijection";
        case ErrorCode::InvalidMarking: return "InvalidMarking";
        case ErrorCode::PatternAbsent: return "PatternAbsent";
        case ErrorCode::MinimumSize: return "MinimumSize";
        case ErrorCode::Interleaved: return "Interleaved";
        case ErrorCode::BadRoutingLength: return "BadRoutingLength";
        case ErrorCode::SlopeOutOfRange: return "SlopeOutOfRange";
        case ErrorCode::TangentialCrossing: return "TangentialCrossing";
        case ErrorCode::NotPlanarSupported: return "NotPlanarSupported";
        case ErrorCode::SameComponent: return "SameComponent";
        case ErrorCode::BadParams: return "BadParams";
        case ErrorCode::SingularInput: return "SingularInput";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::NotAKnot: return "NotAKnot";
        case ErrorCode::OrderNotP: return "OrderNotP";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& msg)
        : std::runtime_error(std::string(to_string(code)) + ": " + msg), code_(code) {}
    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

// Interleaving witness for an illegal commutation: the four endpoint
// positions on the shared circle (first pair a,b; second pair c,d).
class InterleavedError : public Error {
public:
    InterleavedError(const std::string& msg, int a, int b, int c, int d)
        : Error(ErrorCode::Interleaved, msg), a(a), b(b), c(c), d(d) {}
    int a, b, c, d;
};

}  // namespace lensgrid
