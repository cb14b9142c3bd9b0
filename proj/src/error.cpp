#include "oculo/error.h"

namespace oculo {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::MalformedHeader: return "MalformedHeader";
        case ErrorCode::NonMonotonicTimestamps: return "NonMonotonicTimestamps";
        case ErrorCode::EmptyFile: return "EmptyFile";
        case ErrorCode::UnparseableNumeric: return "UnparseableNumeric";
        case ErrorCode::NoRecordingsFound: return "NoRecordingsFound";
        case ErrorCode::InvalidWindow: return "InvalidWindow";
        case ErrorCode::SegmentTooShort: return "SegmentTooShort";
        case ErrorCode::TooFewSamples: return "TooFewSamples";
        case ErrorCode::DegenerateVelocity: return "DegenerateVelocity";
        case ErrorCode::DegenerateDistribution: return "DegenerateDistribution";
        case ErrorCode::TooFewPoints: return "TooFewPoints";
        case ErrorCode::SeriesTooShort: return "SeriesTooShort";
        case ErrorCode::NonPositiveDuration: return "NonPositiveDuration";
        case ErrorCode::AllMissingFeature: return "AllMissingFeature";
        case ErrorCode::SampleTooSmall: return "SampleTooSmall";
        case ErrorCode::ZeroVariance: return "ZeroVariance";
        case ErrorCode::UnequalN: return "UnequalN";
        case ErrorCode::AllZeroDifferences: return "AllZeroDifferences";
        case ErrorCode::LengthMismatch: return "LengthMismatch";
        case ErrorCode::OutOfRange: return "OutOfRange";
        case ErrorCode::TooFewSubjects: return "TooFewSubjects";
        case ErrorCode::InfeasibleSpec: return "InfeasibleSpec";
        case ErrorCode::MalformedTable: return "MalformedTable";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string& detail)
    : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

}  // namespace oculo
