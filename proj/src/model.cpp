#include "oculo/model.h"

#include <algorithm>
#include <cctype>

#include "oculo/error.h"

namespace oculo {

std::string_view to_string(Condition c) noexcept {
    switch (c) {
        case Condition::Baseline: return "Baseline";
        case Condition::Ride: return "Ride";
        case Condition::Fog: return "Fog";
    }
    return "Baseline";
}

std::optional<Condition> parse_condition(std::string_view text) noexcept {
    std::string lower(text);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (lower == "baseline") return Condition::Baseline;
    if (lower == "ride") return Condition::Ride;
    if (lower == "fog") return Condition::Fog;
    return std::nullopt;
}

void ScreenGeometry::validate() const {
    if (width_px <= 0 || height_px <= 0 || !(horiz_fov_deg > 0.0) || !(vert_fov_deg > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "screen geometry fields must be strictly positive");
    }
}

std::size_t MaskedSeries::missing_count() const noexcept {
    return static_cast<std::size_t>(std::count(present.begin(), present.end(), std::uint8_t{0}));
}

namespace {

constexpr std::string_view kDeg = "degrees";
constexpr std::string_view kDps = "degrees/second";
constexpr std::string_view kMs = "ms";
constexpr std::string_view kCount = "count";
constexpr std::string_view kNone = "dimensionless";

constexpr std::array<FeatureInfo, kFeatureCount> kFeatures{{
    {"mean_sacc_amp_deg", kDeg, FeatureGroup::Saccade},
    {"sd_sacc_amp_deg", kDeg, FeatureGroup::Saccade},
    {"median_sacc_amp_deg", kDeg, FeatureGroup::Saccade},
    {"mean_peak_vel_dps", kDps, FeatureGroup::Saccade},
    {"sd_peak_vel_dps", kDps, FeatureGroup::Saccade},
    {"median_peak_vel_dps", kDps, FeatureGroup::Saccade},
    {"mean_sacc_dur_ms", kMs, FeatureGroup::Saccade},
    {"sd_sacc_dur_ms", kMs, FeatureGroup::Saccade},
    {"median_sacc_dur_ms", kMs, FeatureGroup::Saccade},
    {"mean_fix_dur_ms", kMs, FeatureGroup::Saccade},
    {"sd_fix_dur_ms", kMs, FeatureGroup::Saccade},
    {"median_fix_dur_ms", kMs, FeatureGroup::Saccade},
    {"n_saccades", kCount, FeatureGroup::Saccade},
    {"mean_h_gaze_deg", kDeg, FeatureGroup::Dispersion},
    {"mean_v_gaze_deg", kDeg, FeatureGroup::Dispersion},
    {"sd_h_gaze_deg", kDeg, FeatureGroup::Dispersion},
    {"sd_v_gaze_deg", kDeg, FeatureGroup::Dispersion},
    {"rho", kNone, FeatureGroup::Dispersion},
    {"bcea_minarc2", "minarc^2", FeatureGroup::Dispersion},
    {"n_prl", kCount, FeatureGroup::Dispersion},
    {"gi", kNone, FeatureGroup::Dispersion},
    {"mse_deg2", "deg^2", FeatureGroup::Dispersion},
    {"sampen_h", kNone, FeatureGroup::Dispersion},
    {"sampen_v", kNone, FeatureGroup::Dispersion},
    {"apen_h", kNone, FeatureGroup::Dispersion},
    {"apen_v", kNone, FeatureGroup::Dispersion},
    {"mean_blink_dur_ms", kMs, FeatureGroup::Blink},
    {"sd_blink_dur_ms", kMs, FeatureGroup::Blink},
    {"median_blink_dur_ms", kMs, FeatureGroup::Blink},
    {"blink_rate", kCount, FeatureGroup::Blink},
    {"blinks_per_min", "1/min", FeatureGroup::Blink},
}};

}  // namespace

const std::array<FeatureInfo, kFeatureCount>& feature_names() noexcept { return kFeatures; }

std::optional<std::size_t> feature_index(std::string_view name) noexcept {
    for (std::size_t i = 0; i < kFeatures.size(); ++i) {
        if (kFeatures[i].name == name) return i;
    }
    return std::nullopt;
}

FeatureValue FeatureVector::get(std::string_view name) const {
    auto idx = feature_index(name);
    if (!idx) throw Error(ErrorCode::InvalidArgument, "unknown feature " + std::string(name));
    return values[*idx];
}

void FeatureVector::set(std::string_view name, FeatureValue v) {
    auto idx = feature_index(name);
    if (!idx) throw Error(ErrorCode::InvalidArgument, "unknown feature " + std::string(name));
    values[*idx] = v;
}

}  // namespace oculo
