#pragma once

// Synthetic gaze recordings with exact ground truth: fixations with
// correlated jitter, raised-cosine saccades on a main-sequence relation,
// pupil dropouts for blinks and long tracking-loss gaps.

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "oculo/model.h"

namespace oculo {

struct SynthSpec {
    std::uint64_t seed = 1;
    double duration_s = 60.0;
    double fs_hz = 100.0;

    // Mean saccades per second; saturates once 1 / rate drops below the
    // minimum fixation plus the mean saccade duration.
    double saccade_rate_hz = 0.5;
    double amp_min_deg = 2.0;      // uniform amplitude support
    double amp_max_deg = 15.0;
    // Peak velocity = coef * amplitude^exponent, clipped at vmax.
    double main_seq_coef = 80.0;
    double main_seq_exp = 0.6;
    double vmax_dps = 500.0;
    // When both are positive, durations are clamped into [min, max] by
    // adjusting the peak velocity.
    double min_saccade_ms = 0.0;
    double max_saccade_ms = 0.0;
    double min_fixation_ms = 150.0;

    double fix_noise_sd_deg = 0.3;   // stationary SD of the jitter process
    double fix_noise_corr = 0.97;    // lag-one autocorrelation of the jitter
    double measurement_sd_deg = 0.05;
    double drift_dps = 0.0;          // per-fixation drift speed, random direction

    double blink_rate_per_min = 15.0;
    double blink_min_ms = 150.0;
    double blink_max_ms = 350.0;
    double artifact_rate_per_min = 0.0;
    double artifact_min_s = 2.5;
    double artifact_max_s = 4.0;

    double pupil_mm = 3.5;
    double pupil_noise_mm = 0.05;

    // Optional fixation clusters; saccades then jump between them.
    std::vector<std::pair<double, double>> clusters_deg;
    double cluster_sd_deg = 0.5;

    ScreenGeometry geometry;

    /// Throws InvalidArgument on negative rates, bad ranges or amplitudes outside (0, 60].
    void validate() const;
};

struct TrueSaccade {
    std::size_t onset_idx = 0;
    std::size_t offset_idx = 0;  // first sample at or after the movement end
    double onset_s = 0.0;
    double duration_ms = 0.0;
    double amplitude_deg = 0.0;
    double peak_velocity_dps = 0.0;
};

struct TrueInterval {
    std::size_t start_idx = 0;
    std::size_t end_idx = 0;  // exclusive
};

struct GroundTruth {
    std::vector<TrueSaccade> saccades;  // only those fully observable (not hit by a gap)
    std::vector<TrueInterval> fixations;
    std::vector<TrueInterval> blinks;
    std::vector<TrueInterval> artifacts;
};

struct SynthOutput {
    GazeRecording recording;
    GroundTruth truth;
};

/// Pure function of the spec (including its seed). Throws InfeasibleSpec when
/// blinks or gaps cannot be placed without overlap.
SynthOutput generate(const SynthSpec& spec);

/// Subject-level random effects, as log-scale SDs unless noted.
struct SubjectVariation {
    double saccade_rate = 0.15;
    double amplitude = 0.15;
    double noise = 0.15;
    double blink_rate = 0.3;
    double pupil_mm_sd = 0.3;  // additive
};

struct CohortSpec {
    std::size_t n_subjects = 24;
    std::array<SynthSpec, 3> conditions;  // Baseline, Ride, Fog
    SubjectVariation variation;
    std::uint64_t seed = 1;
};

/// Durations 900/600/120 s with otherwise default specs.
CohortSpec default_cohort_spec(std::size_t n_subjects, std::uint64_t seed);

std::string subject_name(std::size_t index);

/// Recordings ordered subject-major, conditions in Baseline, Ride, Fog order.
std::vector<SynthOutput> generate_cohort(const CohortSpec& spec);

/// One recording of a cohort, so callers can stream instead of holding all.
SynthOutput generate_cohort_member(const CohortSpec& spec, std::size_t subject, Condition condition);

/// Deterministic 64-bit stream seed from a base seed and two labels.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b);

std::string truth_to_json(const GroundTruth& truth, const SynthSpec& spec);

}  // namespace oculo
