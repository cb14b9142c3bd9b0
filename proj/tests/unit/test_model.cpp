#include <gtest/gtest.h>

#include <cmath>

#include <set>
#include <sstream>

#include "oculo/descriptive.h"
#include "oculo/error.h"
#include "oculo/model.h"
#include "oculo/table.h"

using namespace oculo;

TEST(Model, FeatureNamesAreCanonical) {
    const auto& names = feature_names();
    ASSERT_EQ(names.size(), 31u);
    std::set<std::string_view> unique;
    for (const auto& f : names) unique.insert(f.name);
    EXPECT_EQ(unique.size(), 31u);
    EXPECT_EQ(names.front().name, "mean_sacc_amp_deg");
    EXPECT_EQ(names[12].name, "n_saccades");
    EXPECT_EQ(names[13].name, "mean_h_gaze_deg");
    EXPECT_EQ(names[18].name, "bcea_minarc2");
    EXPECT_EQ(names[18].unit, "minarc^2");
    EXPECT_EQ(names.back().name, "blinks_per_min");
    int groups[3] = {0, 0, 0};
    for (const auto& f : names) ++groups[static_cast<int>(f.group)];
    EXPECT_EQ(groups[0], 13);
    EXPECT_EQ(groups[1], 13);
    EXPECT_EQ(groups[2], 5);
}

TEST(Model, FeatureIndexRoundTrip) {
    for (std::size_t i = 0; i < kFeatureCount; ++i) {
        EXPECT_EQ(feature_index(feature_names()[i].name), i);
    }
    EXPECT_FALSE(feature_index("nope").has_value());
}

TEST(Model, ScreenGeometryDefaults) {
    ScreenGeometry g;
    EXPECT_DOUBLE_EQ(g.phi1(), 95.0 / 1920.0);
    EXPECT_DOUBLE_EQ(g.phi2(), 63.0 / 1080.0);
    EXPECT_NO_THROW(g.validate());
    g.vert_fov_deg = 0.0;
    EXPECT_THROW(g.validate(), Error);
}

TEST(Model, ConditionParsing) {
    EXPECT_EQ(parse_condition("fog"), Condition::Fog);
    EXPECT_EQ(parse_condition("BASELINE"), Condition::Baseline);
    EXPECT_EQ(parse_condition("Ride"), Condition::Ride);
    EXPECT_FALSE(parse_condition("rain").has_value());
    EXPECT_EQ(to_string(Condition::Fog), "Fog");
}

TEST(Model, FeatureVectorAccess) {
    FeatureVector fv;
    fv.set("gi", 1.5);
    EXPECT_EQ(fv.get("gi"), 1.5);
    EXPECT_FALSE(fv.get("rho").has_value());
    EXPECT_THROW(fv.set("bogus", 1.0), Error);
}

TEST(Model, ErrorMessageCarriesKind) {
    const Error e(ErrorCode::EmptyFile, "x.csv has no rows");
    EXPECT_EQ(e.code(), ErrorCode::EmptyFile);
    EXPECT_STREQ(e.what(), "EmptyFile: x.csv has no rows");
}

TEST(Descriptive, Basics) {
    const std::vector<double> v{150, 200, 250};
    EXPECT_DOUBLE_EQ(mean(v), 200.0);
    EXPECT_DOUBLE_EQ(median(v), 200.0);
    EXPECT_DOUBLE_EQ(sample_sd(v), 50.0);
    EXPECT_NEAR(population_sd(v), std::sqrt(5000.0 / 3.0), 1e-12);
    EXPECT_DOUBLE_EQ(median(std::vector<double>{4, 1, 3, 2}), 2.5);
    const auto s = summarize(std::vector<double>{7});
    EXPECT_EQ(s.mean, 7.0);
    EXPECT_FALSE(s.sd.has_value());
}

TEST(Table, RoundTripIsLossless) {
    FeatureVector a;
    a.subject_id = "P01";
    a.condition = Condition::Ride;
    for (std::size_t i = 0; i < kFeatureCount; i += 2) a.values[i] = 1.0 / (static_cast<double>(i) + 3.0);
    a.values[5] = -0.0;
    a.values[7] = 1e-300;
    FeatureVector b = a;
    b.condition = Condition::Fog;
    b.values[0].reset();
    std::ostringstream out;
    const std::vector<FeatureVector> rows{a, b};
    write_feature_table(out, rows);
    std::istringstream in(out.str());
    const auto back = read_feature_table(in);
    ASSERT_EQ(back.size(), 2u);
    EXPECT_EQ(back[0], a);
    EXPECT_EQ(back[1], b);

    const auto header = out.str().substr(0, out.str().find('\n'));
    EXPECT_EQ(std::count(header.begin(), header.end(), ','), 32);
}

TEST(Table, RejectsMalformedInput) {
    std::istringstream bad_header("subject,condition\n");
    EXPECT_THROW(read_feature_table(bad_header), Error);

    std::ostringstream out;
    FeatureVector a;
    a.subject_id = "P";
    write_feature_table(out, std::vector<FeatureVector>{a});
    std::string text = out.str();
    std::istringstream bad_condition(text.replace(text.find("Baseline"), 8, "Rain"));
    try {
        read_feature_table(bad_condition);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::MalformedTable);
    }
}

TEST(Table, FormatNumberIsShortestRoundTrip) {
    EXPECT_EQ(format_number(0.1), "0.1");
    EXPECT_EQ(format_number(15.0), "15");
    const double x = 2.0 / 3.0;
    EXPECT_EQ(std::stod(format_number(x)), x);
}
