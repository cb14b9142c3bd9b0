#include "oculo/blinks.h"

#include <algorithm>
#include <cmath>

#include "oculo/descriptive.h"
#include "oculo/error.h"

namespace oculo {

BlinkDetection detect_blinks(std::span<const std::uint8_t> present, double fs_hz,
                             const BlinkRules& rules) {
    if (!(fs_hz > 0.0)) throw Error(ErrorCode::InvalidArgument, "fs_hz must be positive");
    const double artifact_limit = static_cast<double>(rules.artifact_samples_at_100hz) * fs_hz / 100.0;

    BlinkDetection det;
    const std::size_t n = present.size();
    std::size_t i = 0;
    while (i < n) {
        if (present[i]) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < n && !present[j]) ++j;
        const std::size_t len = j - i;
        const double ms = static_cast<double>(len) * 1000.0 / fs_hz;
        if (static_cast<double>(len) > artifact_limit) {
            det.artifacts.push_back({i, j});
            det.artifact_sample_count += len;
        } else if (ms >= rules.min_blink_ms && ms <= rules.max_blink_ms) {
            det.blinks.push_back({i, j, ms});
        }
        i = j;
    }
    return det;
}

BlinkDetection detect_blinks(const GazeRecording& rec, const BlinkRules& rules) {
    const auto& left = rec.pupil_left_mm.present;
    const bool left_empty = std::none_of(left.begin(), left.end(), [](std::uint8_t p) { return p != 0; });
    return detect_blinks(left_empty ? rec.pupil_right_mm.present : left, rec.fs_hz, rules);
}

std::vector<std::uint8_t> blink_mask(std::size_t n, const BlinkDetection& det) {
    std::vector<std::uint8_t> mask(n, 0);
    const auto fill = [&](std::size_t a, std::size_t b) {
        std::fill(mask.begin() + static_cast<std::ptrdiff_t>(std::min(a, n)),
                  mask.begin() + static_cast<std::ptrdiff_t>(std::min(b, n)), std::uint8_t{1});
    };
    for (const auto& b : det.blinks) fill(b.onset_idx, b.offset_idx);
    for (const auto& a : det.artifacts) fill(a.start, a.end);
    return mask;
}

std::array<FeatureValue, kBlinkFeatureCount> blink_features(std::span<const BlinkEvent> blinks,
                                                            double analyzed_duration_s) {
    if (!(analyzed_duration_s > 0.0)) {
        throw Error(ErrorCode::NonPositiveDuration, "no analyzable time left after artifact removal");
    }
    std::vector<double> dur;
    for (const auto& b : blinks) dur.push_back(b.duration_ms);
    const auto s = summarize(dur);
    const double count = static_cast<double>(blinks.size());
    return {s.mean, s.sd, s.median, count, count / (analyzed_duration_s / 60.0)};
}

}  // namespace oculo
