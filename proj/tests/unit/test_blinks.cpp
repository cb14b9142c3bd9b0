#include <gtest/gtest.h>

#include <random>

#include "helpers.h"
#include "oculo/blinks.h"
#include "oculo/error.h"

using namespace oculo;

namespace {

// Pupil-present mask with the given missing runs separated by 50 present samples.
std::vector<std::uint8_t> with_gaps(const std::vector<std::size_t>& runs) {
    std::vector<std::uint8_t> m(50, 1);
    for (std::size_t r : runs) {
        m.insert(m.end(), r, 0);
        m.insert(m.end(), 50, 1);
    }
    return m;
}

}  // namespace

TEST(Blinks, RunClassification) {
    const auto det = detect_blinks(with_gaps({9, 15, 45, 250}), 100.0);
    ASSERT_EQ(det.blinks.size(), 1u);
    EXPECT_DOUBLE_EQ(det.blinks[0].duration_ms, 150.0);
    EXPECT_EQ(det.blinks[0].onset_idx, 50u + 9u + 50u);
    EXPECT_EQ(det.blinks[0].offset_idx, det.blinks[0].onset_idx + 15u);
    ASSERT_EQ(det.artifacts.size(), 1u);
    EXPECT_EQ(det.artifacts[0].length(), 250u);
    EXPECT_EQ(det.artifact_sample_count, 250u);
}

TEST(Blinks, BoundariesInclusive) {
    const auto det = detect_blinks(with_gaps({10, 40, 41, 200, 201}), 100.0);
    ASSERT_EQ(det.blinks.size(), 2u);
    EXPECT_DOUBLE_EQ(det.blinks[0].duration_ms, 100.0);
    EXPECT_DOUBLE_EQ(det.blinks[1].duration_ms, 400.0);
    ASSERT_EQ(det.artifacts.size(), 1u);
    EXPECT_EQ(det.artifacts[0].length(), 201u);
}

TEST(Blinks, ArtifactLimitScalesWithRate) {
    // 300 samples at 200 Hz is 1.5 s: below the 400-sample limit, too long for a blink.
    const auto det = detect_blinks(with_gaps({300, 401, 30}), 200.0);
    EXPECT_EQ(det.artifacts.size(), 1u);
    ASSERT_EQ(det.blinks.size(), 1u);
    EXPECT_DOUBLE_EQ(det.blinks[0].duration_ms, 150.0);
}

TEST(Blinks, GapsAtRecordingEdges) {
    std::vector<std::uint8_t> m(300, 1);
    std::fill(m.begin(), m.begin() + 20, 0);
    std::fill(m.end() - 12, m.end(), 0);
    const auto det = detect_blinks(m, 100.0);
    ASSERT_EQ(det.blinks.size(), 2u);
    EXPECT_EQ(det.blinks[0].onset_idx, 0u);
    EXPECT_EQ(det.blinks[1].offset_idx, 300u);
}

TEST(Blinks, RightEyeFallback) {
    auto rec = testutil::make_recording(std::vector<double>(400, 0.0), std::vector<double>(400, 0.0));
    std::fill(rec.pupil_left_mm.present.begin(), rec.pupil_left_mm.present.end(), 0);
    std::fill(rec.pupil_right_mm.present.begin() + 100, rec.pupil_right_mm.present.begin() + 120, 0);
    const auto det = detect_blinks(rec);
    ASSERT_EQ(det.blinks.size(), 1u);
    EXPECT_EQ(det.blinks[0].onset_idx, 100u);

    // Left eye with any data wins, even if the right eye disagrees.
    rec.pupil_left_mm.present[0] = 1;
    const auto left = detect_blinks(rec);
    EXPECT_TRUE(left.blinks.empty());
    EXPECT_EQ(left.artifacts.size(), 1u);
}

TEST(Blinks, MaskCoversBlinksAndArtifacts) {
    const auto m = with_gaps({15, 250, 5});
    const auto det = detect_blinks(m, 100.0);
    const auto mask = blink_mask(m.size(), det);
    std::size_t covered = 0;
    for (auto v : mask) covered += v;
    EXPECT_EQ(covered, 265u);
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (mask[i]) EXPECT_EQ(m[i], 0);
    }
}

TEST(BlinkFeatures, Examples) {
    const std::vector<BlinkEvent> b{{0, 15, 150.0}, {100, 120, 200.0}, {300, 340, 400.0}};
    const auto f = blink_features(b, 120.0);
    EXPECT_DOUBLE_EQ(*f[0], 250.0);
    EXPECT_NEAR(*f[1], std::sqrt(17500.0), 1e-9);
    EXPECT_DOUBLE_EQ(*f[2], 200.0);
    EXPECT_DOUBLE_EQ(*f[3], 3.0);
    EXPECT_DOUBLE_EQ(*f[4], 1.5);

    const auto none = blink_features({}, 60.0);
    EXPECT_FALSE(none[0] || none[1] || none[2]);
    EXPECT_EQ(*none[3], 0.0);
    EXPECT_EQ(*none[4], 0.0);

    try {
        blink_features(b, 0.0);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NonPositiveDuration);
    }
}

TEST(BlinkProperties, ConcatenationAddsCounts) {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<std::size_t> len(1, 300);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<std::size_t> ra, rb;
        for (int k = 0; k < 6; ++k) ra.push_back(len(rng));
        for (int k = 0; k < 6; ++k) rb.push_back(len(rng));
        const auto a = with_gaps(ra), b = with_gaps(rb);
        auto ab = a;
        ab.insert(ab.end(), b.begin(), b.end());
        const auto da = detect_blinks(a, 100.0), db = detect_blinks(b, 100.0), dab = detect_blinks(ab, 100.0);
        EXPECT_EQ(dab.blinks.size(), da.blinks.size() + db.blinks.size());
        EXPECT_EQ(dab.artifacts.size(), da.artifacts.size() + db.artifacts.size());
        for (const auto& e : dab.blinks) {
            EXPECT_GE(e.duration_ms, 100.0);
            EXPECT_LE(e.duration_ms, 400.0);
        }
    }
}
