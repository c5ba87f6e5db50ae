#include "kemeny/errors.hpp"

namespace kemeny {

std::string_view to_string(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NonStochasticRow: return "NonStochasticRow";
    case ErrorKind::NegativeEntry: return "NegativeEntry";
    case ErrorKind::SelfLoop: return "SelfLoop";
    case ErrorKind::TooSmall: return "TooSmall";
    case ErrorKind::Reducible: return "Reducible";
    case ErrorKind::InconsistentInputs: return "InconsistentInputs";
    case ErrorKind::NotReversible: return "NotReversible";
    case ErrorKind::RankDeficient: return "RankDeficient";
    case ErrorKind::NotUnitSum: return "NotUnitSum";
    case ErrorKind::UnknownState: return "UnknownState";
    case ErrorKind::SingularSystem: return "SingularSystem";
    case ErrorKind::SpectralFailure: return "SpectralFailure";
    case ErrorKind::Inadmissible: return "Inadmissible";
    case ErrorKind::CapExceeded: return "CapExceeded";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::NumericalFailure: return "NumericalFailure";
    }
    return "Unknown";
}

} // namespace kemeny
