#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace kemeny {

enum class ErrorKind {
    DimensionMismatch,
    NonStochasticRow,
    NegativeEntry,
    SelfLoop,
    TooSmall,
    Reducible,
    InconsistentInputs,
    NotReversible,
    RankDeficient,
    NotUnitSum,
    UnknownState,
    SingularSystem,
    SpectralFailure,
    Inadmissible,
    CapExceeded,
    ParseError,
    NumericalFailure,
};

std::string_view to_string(ErrorKind kind);

/// Every failure in the library is reported through this type. The kind is
/// the machine-readable category; what() carries the human explanation.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

/// Raised by the full pipeline when a chain fails one of the four
/// admissibility conditions. condition() is one of "irreducible",
/// "aperiodic", "reversible", "loop-free".
class InadmissibleError : public Error {
public:
    InadmissibleError(std::string condition, const std::string& message)
        : Error(ErrorKind::Inadmissible, message), condition_(std::move(condition)) {}

    const std::string& condition() const noexcept { return condition_; }

private:
    std::string condition_;
};

} // namespace kemeny
