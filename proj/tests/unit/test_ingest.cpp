#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "helpers.h"
#include "oculo/error.h"
#include "oculo/ingest.h"

using namespace oculo;

namespace {

GazeRecording parse(const std::string& body, double fs = 100.0) {
    std::istringstream in(std::string(kRecordingHeader) + "\n" + body);
    return parse_recording(in, ScreenGeometry{}, fs);
}

ErrorCode parse_error(const std::string& text) {
    std::istringstream in(text);
    try {
        parse_recording(in, ScreenGeometry{}, 100.0);
    } catch (const Error& e) {
        return e.code();
    }
    return ErrorCode::InvalidArgument;
}

}  // namespace

TEST(Ingest, ConvertsNormalizedGazeToDegrees) {
    const auto r = parse("0,0.5,0.5,3.1,3.2,valid\n0.01,1,0,3.1,3.2,valid\n");
    ASSERT_EQ(r.size(), 2u);
    EXPECT_NEAR(r.x_deg[0], 47.5, 1e-12);
    EXPECT_NEAR(r.y_deg[0], 31.5, 1e-12);
    EXPECT_NEAR(r.x_deg[1], 95.0, 1e-12);
    EXPECT_NEAR(r.y_deg[1], 0.0, 1e-12);
    EXPECT_TRUE(r.pupil_left_mm.has(0));
    EXPECT_DOUBLE_EQ(r.pupil_right_mm.values[1], 3.2);
    EXPECT_DOUBLE_EQ(r.duration_s, 0.02);
}

TEST(Ingest, EmptyAndInvalidFieldsBecomeMissing) {
    const auto r = parse(
        "0,,0.5,3,3,valid\n"
        "0.01,0.5,0.5,3,3,invalid\n"
        "0.02,1.2,0.5,3,3,valid\n"
        "0.03,nan,0.5,3,3,valid\n"
        "0.04,0.5,0.5,0,11,valid\n"
        "0.05,0.5,0.5,3,3,valid\n");
    ASSERT_EQ(r.size(), 6u);
    EXPECT_EQ(r.gaze_present, (std::vector<std::uint8_t>{0, 0, 0, 0, 1, 1}));
    EXPECT_FALSE(r.pupil_left_mm.has(1));
    EXPECT_FALSE(r.pupil_left_mm.has(4));
    EXPECT_FALSE(r.pupil_right_mm.has(4));
    EXPECT_TRUE(r.pupil_left_mm.has(2));
}

TEST(Ingest, SnapsToUniformGrid) {
    // jitter below half a period snaps; duplicate bins keep the last row; holes are missing
    const auto r = parse(
        "10.000,0.1,0.1,3,3,valid\n"
        "10.012,0.2,0.1,3,3,valid\n"
        "10.014,0.3,0.1,3,3,valid\n"
        "10.050,0.4,0.1,3,3,valid\n");
    ASSERT_EQ(r.size(), 6u);
    EXPECT_EQ(r.gaze_present, (std::vector<std::uint8_t>{1, 1, 0, 0, 0, 1}));
    EXPECT_NEAR(r.x_deg[1], 0.3 * 95.0, 1e-12);
    EXPECT_EQ(r.pupil_left_mm.missing_count(), 3u);
}

TEST(Ingest, MissingCountMatchesBadRowsPlusHoles) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-0.2, 1.2);
    std::ostringstream body;
    std::size_t bad = 0, rows = 0;
    for (int i = 0; i < 500; ++i) {
        if (i % 37 == 5) continue;  // hole
        const double x = u(rng), y = u(rng);
        bad += (x < 0 || x > 1 || y < 0 || y > 1) ? 1 : 0;
        body << i * 0.01 << ',' << x << ',' << y << ",3,3,valid\n";
        ++rows;
    }
    const auto r = parse(body.str());
    std::size_t missing = 0;
    for (auto p : r.gaze_present) missing += p ? 0 : 1;
    EXPECT_EQ(missing, bad + (r.size() - rows));
}

TEST(Ingest, Errors) {
    EXPECT_EQ(parse_error(""), ErrorCode::EmptyFile);
    EXPECT_EQ(parse_error(std::string(kRecordingHeader) + "\n"), ErrorCode::EmptyFile);
    EXPECT_EQ(parse_error("time,x,y\n0,1,1\n"), ErrorCode::MalformedHeader);
    EXPECT_EQ(parse_error(std::string(kRecordingHeader) + "\n0,abc,0.5,3,3,valid\n"),
              ErrorCode::UnparseableNumeric);
    EXPECT_EQ(parse_error(std::string(kRecordingHeader) + "\n0,0.5,0.5,3,valid\n"),
              ErrorCode::UnparseableNumeric);
    EXPECT_EQ(parse_error(std::string(kRecordingHeader) + "\n0.02,0.5,0.5,3,3,valid\n0.01,0.5,0.5,3,3,valid\n"),
              ErrorCode::NonMonotonicTimestamps);
}

TEST(Ingest, AcceptsBomAndCrlf) {
    std::istringstream in("\xEF\xBB\xBF" + std::string(kRecordingHeader) + "\r\n0,0.5,0.5,3,3,valid\r\n");
    const auto r = parse_recording(in, ScreenGeometry{}, 100.0);
    EXPECT_EQ(r.size(), 1u);
    EXPECT_TRUE(r.gaze_present[0]);
}

TEST(Ingest, WriteParseRoundTrip) {
    auto rec = testutil::make_recording({10.0, 20.5, 30.25, 40.0}, {5.0, 6.0, 7.0, 8.0});
    rec.gaze_present[2] = 0;
    rec.x_deg[2] = rec.y_deg[2] = 0.0;
    rec.pupil_right_mm.present[1] = 0;
    rec.pupil_right_mm.values[1] = 0.0;
    std::stringstream io;
    write_recording_csv(io, rec, ScreenGeometry{});
    auto back = parse_recording(io, ScreenGeometry{}, 100.0);
    back.subject_id = rec.subject_id;
    ASSERT_EQ(back.size(), rec.size());
    for (std::size_t i = 0; i < rec.size(); ++i) {
        EXPECT_NEAR(back.x_deg[i], rec.x_deg[i], 1e-9);
        EXPECT_NEAR(back.y_deg[i], rec.y_deg[i], 1e-9);
    }
    EXPECT_EQ(back.gaze_present, rec.gaze_present);
    EXPECT_EQ(back.pupil_right_mm.present, rec.pupil_right_mm.present);
}

TEST(Ingest, CohortStemParsing) {
    const auto a = parse_cohort_stem("S01_baseline");
    ASSERT_TRUE(a);
    EXPECT_EQ(a->first, "S01");
    EXPECT_EQ(a->second, Condition::Baseline);
    const auto b = parse_cohort_stem("group_a_7_Fog");
    ASSERT_TRUE(b);
    EXPECT_EQ(b->first, "group_a_7");
    EXPECT_FALSE(parse_cohort_stem("S01").has_value());
    EXPECT_FALSE(parse_cohort_stem("S01_rain").has_value());
}

TEST(Ingest, ValidateCohortExcludesIncompleteSubjects) {
    const auto dir = testutil::temp_dir("cohort");
    const auto touch = [&](const std::string& name) {
        std::ofstream(dir / name) << kRecordingHeader << "\n0,0.5,0.5,3,3,valid\n";
    };
    for (const char* c : {"baseline", "ride", "fog"}) touch(std::string("S01_") + c + ".csv");
    touch("S02_baseline.csv");
    touch("S02_ride.csv");
    touch("notes.csv");
    std::ofstream(dir / "readme.txt") << "x";

    const auto listing = validate_cohort(dir);
    ASSERT_EQ(listing.included.size(), 3u);
    EXPECT_EQ(listing.included[0].condition, Condition::Baseline);
    EXPECT_EQ(listing.included[2].condition, Condition::Fog);
    ASSERT_EQ(listing.excluded.size(), 1u);
    EXPECT_EQ(listing.excluded[0].subject_id, "S02");
    EXPECT_EQ(listing.excluded[0].missing, std::vector<Condition>{Condition::Fog});
    EXPECT_EQ(listing.ignored.size(), 1u);

    const auto rec = parse_recording(dir / "S01_fog.csv", ScreenGeometry{}, 100.0);
    EXPECT_EQ(rec.subject_id, "S01");
    EXPECT_EQ(rec.condition, Condition::Fog);
    std::filesystem::remove_all(dir);
}

TEST(Ingest, EmptyDirectoryHasNoRecordings) {
    const auto dir = testutil::temp_dir("empty");
    try {
        validate_cohort(dir);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NoRecordingsFound);
    }
    std::filesystem::remove_all(dir);
}
