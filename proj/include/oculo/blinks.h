#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "oculo/model.h"

namespace oculo {

struct BlinkRules {
    double min_blink_ms = 100.0;
    double max_blink_ms = 400.0;
    /// Missing runs longer than this many samples at 100 Hz are artifacts;
    /// the count scales linearly with the sampling rate.
    std::size_t artifact_samples_at_100hz = 200;
};

struct BlinkDetection {
    std::vector<BlinkEvent> blinks;
    std::vector<Segment> artifacts;  // excluded from analysis and from rate denominators
    std::size_t artifact_sample_count = 0;
};

/// Classifies every maximal run of missing pupil samples as blink, artifact
/// or noise.
BlinkDetection detect_blinks(std::span<const std::uint8_t> pupil_present, double fs_hz,
                             const BlinkRules& rules = {});

/// Runs on the left pupil stream, or on the right one when the left stream
/// has no sample at all.
BlinkDetection detect_blinks(const GazeRecording& rec, const BlinkRules& rules = {});

/// 1 inside every blink and artifact interval.
std::vector<std::uint8_t> blink_mask(std::size_t n, const BlinkDetection& det);

/// mean/sd/median blink duration (ms), blink count and blinks per minute of
/// analyzed time. Throws NonPositiveDuration unless analyzed_duration_s > 0.
std::array<FeatureValue, kBlinkFeatureCount> blink_features(std::span<const BlinkEvent> blinks,
                                                            double analyzed_duration_s);

}  // namespace oculo
