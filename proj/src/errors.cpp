#include "bohr/errors.hpp"

namespace bohr {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::NonzeroConstantTerm: return "NonzeroConstantTerm";
    case ErrorKind::NonunitConstantTerm: return "NonunitConstantTerm";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::ParamOutOfRange: return "ParamOutOfRange";
    case ErrorKind::PositivityRequired: return "PositivityRequired";
    case ErrorKind::SlowConvergence: return "SlowConvergence";
    case ErrorKind::BracketFailure: return "BracketFailure";
    case ErrorKind::NoSignChange: return "NoSignChange";
    case ErrorKind::NonMonotone: return "NonMonotone";
    case ErrorKind::DualPathMismatch: return "DualPathMismatch";
    case ErrorKind::UncertifiedSchwarz: return "UncertifiedSchwarz";
    case ErrorKind::TailTooLarge: return "TailTooLarge";
    case ErrorKind::InvalidSeries: return "InvalidSeries";
    }
    return "Unknown";
}

} // namespace bohr
