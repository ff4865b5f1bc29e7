#pragma once

#include <stdexcept>
#include <string>

namespace ddce {

enum class ErrorCode {
    NonInvolution,
    NonOrientable,
    UnflippableSelfGluing,
    DegenerateTriangle,
    ZeroRadius,
    NoRealFaceCircle,
    FlipGeometryInvalid,
    FlipLimitExceeded,
    ScaleOutOfDomain,
    ResultInvalid,
    HeightsOutOfDomain,
    WeightOutOfRange,
    NotComparable,
    NotDelaunay,
    PathLeavesDomain,
    Infeasible,
    MaxIterations,
    LineSearchStalled,
    ParseError
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

} // namespace ddce
