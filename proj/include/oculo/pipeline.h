#pragma once

// Per-recording feature extraction: smoothing, velocity, adaptive saccade
// detection, fixations, blinks and dispersion measures in one pass.

#include <filesystem>
#include <optional>

#include "oculo/blinks.h"
#include "oculo/dispersion.h"
#include "oculo/kinematics.h"
#include "oculo/model.h"
#include "oculo/preprocess.h"
#include "oculo/saccades.h"

namespace oculo {

struct ExtractOptions {
    ScreenGeometry geometry;
    double fs_hz = 100.0;
    DetectionOptions detection;
    ThresholdOptions threshold;
    BlinkRules blinks;
    DispersionOptions dispersion;
};

struct RecordingAnalysis {
    SmoothedGaze smoothed;
    VelocityTrace velocity;
    std::optional<MultiplierSearch> search;  // empty when no threshold could be estimated
    std::vector<FixationInterval> fixations;
    BlinkDetection blinks;
    double analyzed_s = 0.0;
    FeatureVector features;
};

/// Runs the whole chain on a recording. Measures that cannot be computed
/// become missing features; nothing here throws for data-dependent reasons.
RecordingAnalysis analyze_recording(const GazeRecording& rec, const ExtractOptions& opts = {});

FeatureVector extract_features(const GazeRecording& rec, const ExtractOptions& opts = {});

/// Parses and extracts one recording file.
FeatureVector extract_features(const std::filesystem::path& path, const ExtractOptions& opts = {});

}  // namespace oculo
