#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace oculo {

enum class ErrorCode {
    InvalidArgument,
    // ingest
    MalformedHeader,
    NonMonotonicTimestamps,
    EmptyFile,
    UnparseableNumeric,
    NoRecordingsFound,
    // preprocess / kinematics
    InvalidWindow,
    SegmentTooShort,
    // saccades
    TooFewSamples,
    DegenerateVelocity,
    // dispersion
    DegenerateDistribution,
    TooFewPoints,
    SeriesTooShort,
    // blinks
    NonPositiveDuration,
    // stats
    AllMissingFeature,
    SampleTooSmall,
    ZeroVariance,
    UnequalN,
    AllZeroDifferences,
    LengthMismatch,
    OutOfRange,
    TooFewSubjects,
    // synth
    InfeasibleSpec,
    // tables
    MalformedTable,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Exception carrying a machine-checkable error kind. The message is
/// prefixed with the kind name, e.g. "EmptyFile: data.csv has no rows".
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& detail);

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace oculo
