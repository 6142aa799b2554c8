#pragma once

#include <stdexcept>
#include <string>

namespace bcnf {

enum class ErrorKind {
    AmbiguousSide,
    ContinuityViolation,
    BetaMismatch,
    BetaNotPositive,
    BorderCollisionViolation,
    NotBracketed,
    NotMonotoneOnBracket,
    NoConvergence,
    SlopeOne,
    WrongSides,
    PreconditionViolation,
    ZeroDerivativeAtSwitch,
    DegenerateQuadratic,
    NonHyperbolic,
    ItineraryMismatch,
    InverseUnbracketed,
    AnchorOutsideDomain,
    RegionUnsupported,
    NonMonotoneData,
    HypothesisViolation,
    DomainTooSmall,
    EscapedBounds,
    InvalidArgument,
    ConfigError,
    IoError,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message);
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& message);

}  // namespace bcnf
