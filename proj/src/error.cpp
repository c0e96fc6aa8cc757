#include "foodbank/error.hpp"

namespace foodbank {

std::string_view to_string(ErrorCode code)
{
    switch (code) {
    case ErrorCode::NonPositiveDemand: return "NonPositiveDemand";
    case ErrorCode::NegativeCapacity: return "NegativeCapacity";
    case ErrorCode::NegativeSupply: return "NegativeSupply";
    case ErrorCode::DuplicateId: return "DuplicateId";
    case ErrorCode::NonFiniteValue: return "NonFiniteValue";
    case ErrorCode::InfeasibleFillRates: return "InfeasibleFillRates";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NumericalFailure: return "NumericalFailure";
    case ErrorCode::UtopianInstance: return "UtopianInstance";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::InvariantViolation: return "InvariantViolation";
    case ErrorCode::PerfectEfficiencyImpossible: return "PerfectEfficiencyImpossible";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ZeroSupply: return "ZeroSupply";
    case ErrorCode::EmptyVector: return "EmptyVector";
    case ErrorCode::TooFewPoints: return "TooFewPoints";
    case ErrorCode::RejectionCapExceeded: return "RejectionCapExceeded";
    case ErrorCode::InsufficientAcceptance: return "InsufficientAcceptance";
    case ErrorCode::BoundsNotApplicable: return "BoundsNotApplicable";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::IoError: return "IoError";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string& detail)
    : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code)
{
}

} // namespace foodbank
