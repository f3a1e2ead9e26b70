#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qgraph {

enum class ErrorCode {
    NonPositiveLength,
    DanglingEndpoint,
    LoopNotAllowed,
    ParallelEdgeNotAllowed,
    ZeroDegree,
    LabelOutOfRange,
    NotCoprime,
    NotTransitive,
    CoverageGap,
    DomainOverlap,
    JumpOutOfRange,
    DuplicateJump,
    IsomorphismCheckFailed,
    NonUnitPhase,
    MissingCondition,
    UnsupportedCondition,
    GridTooCoarse,
    OrientationMismatch,
    InvalidAction,
    InvalidArgument,
    ParseError,
};

std::string_view to_string(ErrorCode code) noexcept;

// All library failures are reported through this type; the code is stable
// and is what the CLI prints on its machine-readable error line.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace qgraph
