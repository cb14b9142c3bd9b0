#pragma once

// Fixation-stability measures: bivariate contour ellipse area, axis-ratio
// (Guzik's) index, perpendicular spread, preferred-locus count and
// sample/approximate entropy of the gaze traces.

#include <array>
#include <span>

#include "oculo/model.h"

namespace oculo {

/// Probability-mass constant of the 95% contour ellipse.
inline constexpr double kBceaK = 3.0;
inline constexpr double kMinarc2PerDeg2 = 3600.0;

struct EllipseStats {
    double mean_h_deg = 0.0;
    double mean_v_deg = 0.0;
    double sd_h_deg = 0.0;  // population sd
    double sd_v_deg = 0.0;
    double rho = 0.0;
    double bcea_deg2 = 0.0;
    double bcea_minarc2 = 0.0;
    double major_axis_angle_rad = 0.0;
    double sd_parallel_deg = 0.0;
    double sd_perpendicular_deg = 0.0;
    double gi = 1.0;
    double mse_deg2 = 0.0;
};

/// 2 pi k sx sy sqrt(1 - rho^2).
double bcea_deg2(double sd_h, double sd_v, double rho, double k = kBceaK);

/// Throws TooFewPoints below 3 samples and DegenerateDistribution when either
/// sd is zero or |rho| = 1.
EllipseStats ellipse_stats(std::span<const double> x_deg, std::span<const double> y_deg);

struct PrlOptions {
    double mass = 0.68;  // probability mass enclosed by the density contour
    int grid = 64;
    double pad = 0.10;  // bounding-box padding per side, fraction of range
};

/// Number of 8-connected regions of a Gaussian KDE (Silverman bandwidth per
/// axis) lying above the density level that encloses `mass` of the total.
/// Throws TooFewPoints below 10 points, DegenerateDistribution when an axis
/// has zero spread.
int count_prls(std::span<const double> x_deg, std::span<const double> y_deg,
               const PrlOptions& opts = {});

struct EntropyOptions {
    int m = 2;
    double r_factor = 0.2;  // tolerance = r_factor * sd of each window
    std::size_t window = 3000;
    std::size_t min_tail = 1000;  // a trailing partial window is kept from this length
    std::size_t min_length = 100;
};

/// SampEn of one window with explicit tolerance (Chebyshev distance,
/// self-matches excluded). Returns +inf when no (m+1)-length match exists.
double sample_entropy_window(std::span<const double> series, int m, double r);

/// ApEn of one window with explicit tolerance (self-matches included).
double approximate_entropy_window(std::span<const double> series, int m, double r);

/// Windowed SampEn averaged over windows; a constant window contributes 0.
/// Windows without any template match are skipped; if none remain the
/// result is +inf. Throws SeriesTooShort below opts.min_length.
double sample_entropy(std::span<const double> series, const EntropyOptions& opts = {});
double approximate_entropy(std::span<const double> series, const EntropyOptions& opts = {});

struct EntropyPair {
    double sampen;
    double apen;
};

/// Both entropies in one pass over the template pairs.
EntropyPair entropies(std::span<const double> series, const EntropyOptions& opts = {});

struct DispersionOptions {
    PrlOptions prl;
    EntropyOptions entropy;
};

/// The 13 dispersion-group features. Ellipse, PRL and entropy values come
/// from all present gaze samples, PRLs from samples inside fixations. Any
/// failing measure is reported missing.
std::array<FeatureValue, kDispersionFeatureCount> dispersion_features(
    const GazeRecording& rec, std::span<const FixationInterval> fixations,
    const DispersionOptions& opts = {});

}  // namespace oculo
