#pragma once

// Domain types shared by every stage of the pipeline. Gaze positions are
// stored in degrees of visual angle; missing samples are tracked by explicit
// masks, never by sentinel values.

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace oculo {

enum class Condition { Baseline, Ride, Fog };

inline constexpr std::array<Condition, 3> kConditions{Condition::Baseline, Condition::Ride,
                                                      Condition::Fog};

std::string_view to_string(Condition c) noexcept;

/// Case-insensitive ("baseline", "Baseline", "BASELINE" all parse).
std::optional<Condition> parse_condition(std::string_view text) noexcept;

/// Display geometry used to map normalized gaze to visual angle.
/// The map is linear: deg = px * fov / resolution.
struct ScreenGeometry {
    int width_px = 1920;
    int height_px = 1080;
    double horiz_fov_deg = 95.0;
    double vert_fov_deg = 63.0;

    /// Degrees per horizontal pixel.
    double phi1() const noexcept { return horiz_fov_deg / width_px; }
    /// Degrees per vertical pixel.
    double phi2() const noexcept { return vert_fov_deg / height_px; }

    /// Throws Error(InvalidArgument) unless every field is strictly positive.
    void validate() const;
};

/// One row of an eye-tracker export after field parsing.
struct GazeSample {
    double t = 0.0;
    std::optional<double> gaze_norm_x;
    std::optional<double> gaze_norm_y;
    std::optional<double> pupil_left_mm;
    std::optional<double> pupil_right_mm;
    bool valid = false;
};

/// Values plus a presence mask of equal length (1 = present).
/// Slots whose mask is 0 hold 0.0 and must not be read.
struct MaskedSeries {
    std::vector<double> values;
    std::vector<std::uint8_t> present;

    std::size_t size() const noexcept { return values.size(); }
    bool has(std::size_t i) const noexcept { return present[i] != 0; }
    std::size_t missing_count() const noexcept;
};

struct GazeRecording {
    std::string subject_id;
    Condition condition = Condition::Baseline;
    double fs_hz = 100.0;
    std::vector<double> x_deg;
    std::vector<double> y_deg;
    std::vector<std::uint8_t> gaze_present;
    MaskedSeries pupil_left_mm;
    MaskedSeries pupil_right_mm;
    double duration_s = 0.0;

    std::size_t size() const noexcept { return x_deg.size(); }

    bool operator==(const GazeRecording&) const = default;
};

/// Half-open index range [start, end) of consecutive present samples.
struct Segment {
    std::size_t start = 0;
    std::size_t end = 0;

    std::size_t length() const noexcept { return end - start; }
    bool operator==(const Segment&) const = default;
};

struct SaccadeEvent {
    std::size_t onset_idx = 0;
    std::size_t peak_idx = 0;
    std::size_t offset_idx = 0;
    double duration_ms = 0.0;
    double amplitude_deg = 0.0;
    double peak_velocity_dps = 0.0;
};

struct FixationInterval {
    std::size_t start_idx = 0;
    std::size_t end_idx = 0;  // exclusive
    double duration_ms = 0.0;
};

struct BlinkEvent {
    std::size_t onset_idx = 0;   // first missing sample
    std::size_t offset_idx = 0;  // one past the last missing sample
    double duration_ms = 0.0;
};

enum class FeatureGroup { Saccade, Dispersion, Blink };

struct FeatureInfo {
    std::string_view name;
    std::string_view unit;
    FeatureGroup group;
};

inline constexpr std::size_t kFeatureCount = 31;
inline constexpr std::size_t kSaccadeFeatureCount = 13;
inline constexpr std::size_t kDispersionFeatureCount = 13;
inline constexpr std::size_t kBlinkFeatureCount = 5;

/// The canonical ordered feature list: 13 saccade, 13 dispersion, 5 blink.
const std::array<FeatureInfo, kFeatureCount>& feature_names() noexcept;

std::optional<std::size_t> feature_index(std::string_view name) noexcept;

using FeatureValue = std::optional<double>;

struct FeatureVector {
    std::string subject_id;
    Condition condition = Condition::Baseline;
    std::array<FeatureValue, kFeatureCount> values{};

    FeatureValue get(std::string_view name) const;
    void set(std::string_view name, FeatureValue v);

    bool operator==(const FeatureVector&) const = default;
};

}  // namespace oculo
