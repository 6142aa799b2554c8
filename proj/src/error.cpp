#include "bcnf/error.hpp"

namespace bcnf {

const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::AmbiguousSide: return "AmbiguousSide";
        case ErrorKind::ContinuityViolation: return "ContinuityViolation";
        case ErrorKind::BetaMismatch: return "BetaMismatch";
        case ErrorKind::BetaNotPositive: return "BetaNotPositive";
        case ErrorKind::BorderCollisionViolation: return "BorderCollisionViolation";
        case ErrorKind::NotBracketed: return "NotBracketed";
        case ErrorKind::NotMonotoneOnBracket: return "NotMonotoneOnBracket";
        case ErrorKind::NoConvergence: return "NoConvergence";
        case ErrorKind::SlopeOne: return "SlopeOne";
        case ErrorKind::WrongSides: return "WrongSides";
        case ErrorKind::PreconditionViolation: return "PreconditionViolation";
        case ErrorKind::ZeroDerivativeAtSwitch: return "ZeroDerivativeAtSwitch";
        case ErrorKind::DegenerateQuadratic: return "DegenerateQuadratic";
        case ErrorKind::NonHyperbolic: return "NonHyperbolic";
        case ErrorKind::ItineraryMismatch: return "ItineraryMismatch";
        case ErrorKind::InverseUnbracketed: return "InverseUnbracketed";
        case ErrorKind::AnchorOutsideDomain: return "AnchorOutsideDomain";
        case ErrorKind::RegionUnsupported: return "RegionUnsupported";
        case ErrorKind::NonMonotoneData: return "NonMonotoneData";
        case ErrorKind::HypothesisViolation: return "HypothesisViolation";
        case ErrorKind::DomainTooSmall: return "DomainTooSmall";
        case ErrorKind::EscapedBounds: return "EscapedBounds";
        case ErrorKind::InvalidArgument: return "InvalidArgument";
        case ErrorKind::ConfigError: return "ConfigError";
        case ErrorKind::IoError: return "IoError";
    }
    return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(message), kind_(kind) {}

void fail(ErrorKind kind, const std::string& message) { throw Error(kind, message); }

}  // namespace bcnf
