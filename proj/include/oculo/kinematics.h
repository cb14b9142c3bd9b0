#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "oculo/model.h"
#include "oculo/preprocess.h"

namespace oculo {

/// Angular speeds above this are physiologically impossible.
inline constexpr double kMaxPlausibleVelocityDps = 1000.0;

/// Angular speed per sample.
///  - defined:     speed was computed (sample lies in a segment of >= 3 samples)
///  - plaus_mask:  usable for threshold estimation (defined, <= 1000 deg/s and
///                 not below the recording median)
///  - scan_segments: runs of defined samples <= 1000 deg/s; event detection
///                 never crosses their boundaries
struct VelocityTrace {
    std::vector<double> v_dps;
    std::vector<std::uint8_t> defined;
    std::vector<std::uint8_t> plaus_mask;
    std::vector<Segment> scan_segments;
    double median_dps = 0.0;

    std::size_t size() const noexcept { return v_dps.size(); }
    /// Speeds with plaus_mask set, in index order.
    std::vector<double> estimation_pool() const;
};

/// Central-difference speed of one gap-free run (one-sided at the ends).
/// Positions are already in degrees. Throws SegmentTooShort below 3 samples.
std::vector<double> angular_velocity(std::span<const double> x_deg, std::span<const double> y_deg,
                                     double fs_hz);

/// Speed over every segment of at least 3 samples; shorter segments stay undefined.
VelocityTrace velocity_trace(std::span<const double> x_deg, std::span<const double> y_deg,
                             std::span<const Segment> segments, double fs_hz);

VelocityTrace velocity_trace(const SmoothedGaze& gaze, double fs_hz);

}  // namespace oculo
