#pragma once

// Adaptive velocity-threshold saccade detection.
//
// The peak threshold is the fixed point of
//     AT <- mean(v < AT) + n * sd(v < AT)
// over the estimation pool, started at 200 deg/s. Peaks are supra-threshold
// runs; onsets and offsets are refined by walking down to the onset threshold
// mu + 3 sigma (offset: blended with the local noise preceding the onset) and
// then to the nearest local velocity minimum. The multiplier n is chosen from
// {2.5, 3.0, ..., 6.0} by minimizing the number of events shorter than 10 ms
// or longer than 100 ms.

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "oculo/kinematics.h"
#include "oculo/model.h"
#include "oculo/preprocess.h"

namespace oculo {

struct ThresholdState {
    double theta_pT = 0.0;  // converged peak threshold, deg/s
    double mu = 0.0;        // mean of the final sub-threshold pool
    double sigma = 0.0;     // sample sd of the final sub-threshold pool
    double n_multiplier = 0.0;
    int iterations = 0;
    bool converged = false;

    double onset_threshold() const noexcept { return mu + 3.0 * sigma; }
};

struct ThresholdOptions {
    double init_dps = 200.0;
    double tolerance_dps = 1.0;
    int max_iterations = 100;
    std::size_t min_samples = 100;
};

/// Fixed-point iteration on an explicit pool (no minimum pool size).
/// Throws DegenerateVelocity when the sub-threshold pool has no spread.
ThresholdState iterate_threshold(std::span<const double> pool, double multiplier,
                                 const ThresholdOptions& opts = {});

/// Iteration on the trace's estimation pool; throws TooFewSamples below
/// opts.min_samples eligible samples.
ThresholdState iterate_threshold(const VelocityTrace& vel, double multiplier,
                                 const ThresholdOptions& opts = {});

struct DetectionOptions {
    double local_min_search_ms = 100.0;
    double local_noise_window_ms = 40.0;
    double min_saccade_ms = 10.0;
    double max_saccade_ms = 100.0;
    double min_fixation_ms = 50.0;
};

struct DetectionResult {
    std::vector<SaccadeEvent> saccades;  // sorted by onset, non-overlapping
    std::vector<FixationInterval> fixations;
    ThresholdState threshold;
    int misdetections = 0;
};

/// Finds saccades in the velocity trace; amplitudes are measured on `gaze`.
DetectionResult detect_saccades(const SmoothedGaze& gaze, const VelocityTrace& vel,
                                const ThresholdState& threshold, double fs_hz,
                                const DetectionOptions& opts = {});

inline constexpr std::array<double, 8> kMultiplierGrid{2.5, 3.0, 3.5, 4.0, 4.5, 5.0, 5.5, 6.0};

struct MultiplierScore {
    double multiplier = 0.0;
    int detected = 0;
    int misdetections = 0;
};

struct MultiplierSearch {
    DetectionResult result;  // winning detection with misdetections removed
    double multiplier = 0.0;
    std::array<MultiplierScore, kMultiplierGrid.size()> scores{};
};

bool is_misdetection(const SaccadeEvent& s, const DetectionOptions& opts = {});

/// Runs detection for every grid multiplier and keeps the one with the fewest
/// misdetections (ties go to the smallest multiplier).
MultiplierSearch optimize_multiplier(const SmoothedGaze& gaze, const VelocityTrace& vel,
                                     double fs_hz, const DetectionOptions& opts = {},
                                     const ThresholdOptions& threshold_opts = {});

/// Intervals between consecutive saccades (offset -> next onset). Samples
/// outside `segments` or flagged in `blink_mask` are cut out and split the
/// interval; pieces shorter than opts.min_fixation_ms are dropped.
std::vector<FixationInterval> extract_fixations(std::span<const SaccadeEvent> saccades,
                                                std::span<const Segment> segments,
                                                std::span<const std::uint8_t> blink_mask,
                                                double fs_hz, const DetectionOptions& opts = {});

/// The 13 saccade-group features in feature_names() order.
std::array<FeatureValue, kSaccadeFeatureCount> saccade_features(
    std::span<const SaccadeEvent> saccades, std::span<const FixationInterval> fixations);

}  // namespace oculo
