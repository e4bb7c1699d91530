#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace bohr {

enum class ErrorKind {
    NonzeroConstantTerm,
    NonunitConstantTerm,
    DomainError,
    ParamOutOfRange,
    PositivityRequired,
    SlowConvergence,
    BracketFailure,
    NoSignChange,
    NonMonotone,
    DualPathMismatch,
    UncertifiedSchwarz,
    TailTooLarge,
    InvalidSeries,
};

std::string_view to_string(ErrorKind kind);

// Single exception type for the library; callers dispatch on kind().
class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

  private:
    ErrorKind kind_;
};

} // namespace bohr
