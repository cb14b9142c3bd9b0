#pragma once

// Canonical recording format: UTF-8 CSV with the exact header
//   t,gaze2d_x,gaze2d_y,pupil_left,pupil_right,validity
// t in seconds, gaze in normalized screen coordinates [0,1], pupils in mm,
// validity "valid" or anything else.

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "oculo/model.h"

namespace oculo {

inline constexpr std::string_view kRecordingHeader =
    "t,gaze2d_x,gaze2d_y,pupil_left,pupil_right,validity";

/// Pupil diameters outside (0, kMaxPupilMm] are physiologically implausible.
inline constexpr double kMaxPupilMm = 10.0;

/// Parses a recording and snaps rows to a uniform grid at fs_hz (nearest bin,
/// the last row wins a shared bin, empty bins are missing). Rows that are not
/// "valid", have empty/NaN fields, or fall outside [0,1] become missing.
/// subject_id and condition come from a `<subject>_<condition>.csv` file
/// name when it matches; otherwise subject_id is the file stem.
GazeRecording parse_recording(const std::filesystem::path& path,
                              const ScreenGeometry& geometry, double fs_hz);

GazeRecording parse_recording(std::istream& in, const ScreenGeometry& geometry, double fs_hz,
                              std::string_view source_name = "<stream>");

/// Writes a recording in the canonical schema, one row per grid sample.
/// Samples with missing gaze are written with empty gaze fields and
/// validity "invalid"; pupils follow their own masks.
void write_recording_csv(std::ostream& out, const GazeRecording& rec,
                         const ScreenGeometry& geometry);

struct CohortEntry {
    std::string subject_id;
    Condition condition;
    std::filesystem::path path;
};

struct CohortExclusion {
    std::string subject_id;
    std::string reason;
    std::vector<Condition> missing;
};

struct CohortListing {
    std::vector<CohortEntry> included;  // sorted by subject, then condition
    std::vector<CohortExclusion> excluded;
    std::vector<std::filesystem::path> ignored;  // .csv files not named <subject>_<condition>
};

/// Splits "S01_baseline" into ("S01", Baseline). The subject part may itself
/// contain underscores; the condition is the text after the last one.
std::optional<std::pair<std::string, Condition>> parse_cohort_stem(std::string_view stem);

/// Scans dir for `<subject>_<condition>.csv`; subjects lacking any of the
/// three conditions are excluded. Throws NoRecordingsFound when nothing matches.
CohortListing validate_cohort(const std::filesystem::path& dir);

}  // namespace oculo
