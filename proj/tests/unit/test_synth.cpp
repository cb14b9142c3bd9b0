#include <gtest/gtest.h>

#include <json.hpp>
#include <sstream>

#include "oculo/blinks.h"
#include "oculo/error.h"
#include "oculo/ingest.h"
#include "oculo/pipeline.h"
#include "oculo/synth.h"

using namespace oculo;

namespace {

std::string csv_of(const GazeRecording& rec, const ScreenGeometry& g = {}) {
    std::ostringstream out;
    write_recording_csv(out, rec, g);
    return out.str();
}

}  // namespace

TEST(Synth, DeterministicPerSeed) {
    SynthSpec spec;
    spec.seed = 5;
    spec.duration_s = 30.0;
    const auto a = generate(spec), b = generate(spec);
    EXPECT_EQ(csv_of(a.recording), csv_of(b.recording));
    EXPECT_EQ(truth_to_json(a.truth, spec), truth_to_json(b.truth, spec));
    spec.seed = 6;
    EXPECT_NE(csv_of(generate(spec).recording), csv_of(a.recording));
}

TEST(Synth, PureFixationHasNoEvents) {
    SynthSpec spec;
    spec.seed = 9;
    spec.duration_s = 60.0;
    spec.saccade_rate_hz = 0.0;
    spec.blink_rate_per_min = 0.0;
    const auto out = generate(spec);
    EXPECT_TRUE(out.truth.saccades.empty());
    EXPECT_TRUE(out.truth.blinks.empty());
    const auto a = analyze_recording(out.recording);
    EXPECT_EQ(a.features.get("n_saccades").value_or(0.0), 0.0);
    EXPECT_TRUE(a.blinks.blinks.empty());
}

TEST(Synth, SaccadeCountFollowsRate) {
    SynthSpec spec;
    spec.seed = 10;
    spec.duration_s = 60.0;
    spec.saccade_rate_hz = 2.0;
    const auto out = generate(spec);
    EXPECT_NEAR(static_cast<double>(out.truth.saccades.size()), 120.0, 24.0);
    for (std::size_t i = 1; i < out.truth.saccades.size(); ++i) {
        EXPECT_LT(out.truth.saccades[i - 1].offset_idx, out.truth.saccades[i].onset_idx);
    }
    for (const auto& s : out.truth.saccades) {
        EXPECT_GE(s.amplitude_deg, spec.amp_min_deg - 1e-9);
        EXPECT_LE(s.amplitude_deg, spec.amp_max_deg + 1e-9);
        EXPECT_LE(s.peak_velocity_dps, spec.vmax_dps + 1e-9);
        EXPECT_GT(s.duration_ms, 0.0);
    }
}

TEST(Synth, BlinksRecoveredExactly) {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        SynthSpec spec;
        spec.seed = seed;
        spec.duration_s = 120.0;
        spec.blink_rate_per_min = 20.0;
        spec.artifact_rate_per_min = 0.5;
        const auto out = generate(spec);
        const auto det = detect_blinks(out.recording);
        ASSERT_EQ(det.blinks.size(), out.truth.blinks.size());
        for (std::size_t i = 0; i < det.blinks.size(); ++i) {
            EXPECT_EQ(det.blinks[i].onset_idx, out.truth.blinks[i].start_idx);
            EXPECT_EQ(det.blinks[i].offset_idx, out.truth.blinks[i].end_idx);
        }
        ASSERT_EQ(det.artifacts.size(), out.truth.artifacts.size());
        for (std::size_t i = 0; i < det.artifacts.size(); ++i) {
            EXPECT_EQ(det.artifacts[i].start, out.truth.artifacts[i].start_idx);
        }
    }
}

TEST(Synth, BlinkDurationsWithinRange) {
    SynthSpec spec;
    spec.seed = 12;
    spec.duration_s = 300.0;
    const auto out = generate(spec);
    ASSERT_FALSE(out.truth.blinks.empty());
    for (const auto& b : out.truth.blinks) {
        const double ms = static_cast<double>(b.end_idx - b.start_idx) * 1000.0 / spec.fs_hz;
        EXPECT_GE(ms, spec.blink_min_ms - 1e-9);
        EXPECT_LE(ms, spec.blink_max_ms + 1e-9);
        for (std::size_t i = b.start_idx; i < b.end_idx; ++i) {
            EXPECT_FALSE(out.recording.pupil_left_mm.present[i]);
            EXPECT_FALSE(out.recording.gaze_present[i]);
        }
    }
}

TEST(Synth, Validation) {
    SynthSpec spec;
    spec.saccade_rate_hz = -1.0;
    EXPECT_THROW(generate(spec), Error);
    spec = {};
    spec.amp_max_deg = 70.0;
    EXPECT_THROW(spec.validate(), Error);
    spec = {};
    spec.duration_s = 10.0;
    spec.blink_rate_per_min = 2000.0;
    try {
        generate(spec);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::InfeasibleSpec);
    }
}

TEST(Synth, CohortMembersAreIndependentlyReproducible) {
    auto spec = default_cohort_spec(3, 44);
    for (auto& c : spec.conditions) c.duration_s = 20.0;
    const auto all = generate_cohort(spec);
    ASSERT_EQ(all.size(), 9u);
    const auto one = generate_cohort_member(spec, 1, Condition::Fog);
    EXPECT_EQ(csv_of(one.recording), csv_of(all[5].recording));
    EXPECT_EQ(all[5].recording.subject_id, "S02");
    EXPECT_EQ(subject_name(0), "S01");
    EXPECT_EQ(subject_name(11), "S12");
    EXPECT_NE(derive_seed(1, 2, 3), derive_seed(1, 3, 2));
    EXPECT_EQ(default_cohort_spec(4, 1).conditions[0].duration_s, 900.0);
    EXPECT_EQ(default_cohort_spec(4, 1).conditions[2].duration_s, 120.0);
}

TEST(Synth, TruthJsonRoundTrip) {
    SynthSpec spec;
    spec.seed = 3;
    spec.duration_s = 20.0;
    const auto out = generate(spec);
    const auto j = nlohmann::json::parse(truth_to_json(out.truth, spec));
    EXPECT_EQ(j["seed"], 3);
    EXPECT_EQ(j["saccades"].size(), out.truth.saccades.size());
    EXPECT_EQ(j["blinks"].size(), out.truth.blinks.size());
}

TEST(Synth, CsvParsesBack) {
    SynthSpec spec;
    spec.seed = 4;
    spec.duration_s = 15.0;
    const auto out = generate(spec);
    std::istringstream in(csv_of(out.recording));
    const auto back = parse_recording(in, spec.geometry, spec.fs_hz, "mem");
    ASSERT_EQ(back.size(), out.recording.size());
    for (std::size_t i = 0; i < back.size(); ++i) {
        ASSERT_EQ(back.gaze_present[i], out.recording.gaze_present[i]);
        if (back.gaze_present[i]) {
            EXPECT_NEAR(back.x_deg[i], out.recording.x_deg[i], 1e-4);
        }
    }
}
