#pragma once

#include <stdexcept>
#include <string>

namespace miniweyl {

/// Failure categories surfaced by the numeric kernels.  The CLI maps these
/// to exit code 3 (numeric failure); ConfigInvalid maps to 2 and IoFailure
/// to 4.
enum class ErrorCode {
    FlowDivergence,
    ChartPole,
    NewtonStall,
    DegenerateAnchors,
    NonPositiveDensity,
    SingularMetric,
    StepTooLarge,
    StepBudgetExceeded,
    TrappedGeodesic,
    MultipleSignChanges,
    RankDeficient,
    StepCollapse,
    NonIntegral,
    DerivativeZero,
    ConeFitFailure,
    AmbiguousZeros,
    ConfigInvalid,
    IoFailure,
};

const char* errorCodeName(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(errorCodeName(code)) + ": " + what),
          code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
    throw Error(code, what);
}

}  // namespace miniweyl
