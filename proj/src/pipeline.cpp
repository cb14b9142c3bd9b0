#include "oculo/pipeline.h"

#include "oculo/error.h"
#include "oculo/ingest.h"

namespace oculo {

RecordingAnalysis analyze_recording(const GazeRecording& rec, const ExtractOptions& opts) {
    RecordingAnalysis a;
    a.features.subject_id = rec.subject_id;
    a.features.condition = rec.condition;
    const double fs = rec.fs_hz;

    a.smoothed = smooth_gaze(rec);
    a.velocity = velocity_trace(a.smoothed, fs);
    a.blinks = detect_blinks(rec, opts.blinks);
    const auto mask = blink_mask(rec.size(), a.blinks);

    std::size_t k = 0;
    try {
        a.search = optimize_multiplier(a.smoothed, a.velocity, fs, opts.detection, opts.threshold);
    } catch (const Error& e) {
        if (e.code() != ErrorCode::TooFewSamples && e.code() != ErrorCode::DegenerateVelocity) throw;
    }
    if (a.search) {
        auto& det = a.search->result;
        a.fixations = extract_fixations(det.saccades, a.velocity.scan_segments, mask, fs, opts.detection);
        det.fixations = a.fixations;
        const auto sacc = saccade_features(det.saccades, a.fixations);
        for (const auto& v : sacc) a.features.values[k++] = v;
    } else {
        k += kSaccadeFeatureCount;
    }

    for (const auto& v : dispersion_features(rec, a.fixations, opts.dispersion)) a.features.values[k++] = v;

    const double artifact_s = static_cast<double>(a.blinks.artifact_sample_count) / fs;
    a.analyzed_s = rec.duration_s - artifact_s;
    if (a.analyzed_s > 0.0) {
        for (const auto& v : blink_features(a.blinks.blinks, a.analyzed_s)) a.features.values[k++] = v;
    }
    return a;
}

FeatureVector extract_features(const GazeRecording& rec, const ExtractOptions& opts) {
    return analyze_recording(rec, opts).features;
}

FeatureVector extract_features(const std::filesystem::path& path, const ExtractOptions& opts) {
    return extract_features(parse_recording(path, opts.geometry, opts.fs_hz), opts);
}

}  // namespace oculo
