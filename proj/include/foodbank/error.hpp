#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace foodbank {

enum class ErrorCode {
    NonPositiveDemand,
    NegativeCapacity,
    NegativeSupply,
    DuplicateId,
    NonFiniteValue,
    InfeasibleFillRates,
    DimensionMismatch,
    NumericalFailure,
    UtopianInstance,
    PreconditionViolated,
    InvariantViolation,
    PerfectEfficiencyImpossible,
    InvalidArgument,
    ZeroSupply,
    EmptyVector,
    TooFewPoints,
    RejectionCapExceeded,
    InsufficientAcceptance,
    BoundsNotApplicable,
    ParseError,
    ConfigError,
    IoError,
};

std::string_view to_string(ErrorCode code);

// Every failure the library raises carries a machine-checkable code.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& detail);

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace foodbank
