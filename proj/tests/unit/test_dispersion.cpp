#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "helpers.h"
#include "oculo/dispersion.h"
#include "oculo/error.h"

using namespace oculo;

namespace {

// Textbook template matching, written independently of the library.
double brute_sampen(const std::vector<double>& x, int m, double r) {
    const int n = static_cast<int>(x.size());
    auto matches = [&](int len) {
        double c = 0;
        for (int i = 0; i < n - m; ++i) {
            for (int j = 0; j < n - m; ++j) {
                if (i == j) continue;
                double d = 0;
                for (int k = 0; k < len; ++k) d = std::max(d, std::abs(x[i + k] - x[j + k]));
                if (d <= r) c += 1;
            }
        }
        return c;
    };
    const double b = matches(m), a = matches(m + 1);
    return -std::log(a / b);
}

double brute_apen(const std::vector<double>& x, int m, double r) {
    const int n = static_cast<int>(x.size());
    auto phi = [&](int len) {
        const int count = n - len + 1;
        double s = 0;
        for (int i = 0; i < count; ++i) {
            int c = 0;
            for (int j = 0; j < count; ++j) {
                double d = 0;
                for (int k = 0; k < len; ++k) d = std::max(d, std::abs(x[i + k] - x[j + k]));
                if (d <= r) ++c;
            }
            s += std::log(static_cast<double>(c) / count);
        }
        return s / count;
    };
    return phi(m) - phi(m + 1);
}

double pop_sd(const std::vector<double>& x) {
    double m = 0;
    for (double v : x) m += v;
    m /= x.size();
    double s = 0;
    for (double v : x) s += (v - m) * (v - m);
    return std::sqrt(s / x.size());
}

std::vector<double> ar1(std::size_t n, std::uint64_t seed, double phi) {
    auto e = testutil::normal_draws(n, seed);
    for (std::size_t i = 1; i < n; ++i) e[i] += phi * e[i - 1];
    return e;
}

}  // namespace

TEST(Bcea, ClosedFormAnchor) {
    EXPECT_NEAR(bcea_deg2(1.0, 1.0, 0.0), 6.0 * std::numbers::pi, 1e-12);
    EXPECT_NEAR(kMinarc2PerDeg2 * bcea_deg2(1.0, 1.0, 0.0), 67858.4, 0.05);
    EXPECT_NEAR(bcea_deg2(2.0, 0.5, 0.6), 2.0 * std::numbers::pi * 3.0 * 1.0 * 0.8, 1e-12);
}

TEST(Bcea, MatchesSampleStatistics) {
    const auto x = testutil::normal_draws(20000, 1, 0.0, 1.0);
    const auto y = testutil::normal_draws(20000, 2, 0.0, 1.0);
    const auto st = ellipse_stats(x, y);
    EXPECT_NEAR(st.bcea_deg2, bcea_deg2(st.sd_h_deg, st.sd_v_deg, st.rho), 1e-9);
    EXPECT_NEAR(st.bcea_deg2, 6.0 * std::numbers::pi, 0.6);
    EXPECT_NEAR(st.gi, 1.0, 0.05);
}

TEST(Bcea, ScalesQuadraticallyAndIgnoresTranslation) {
    const auto x = testutil::normal_draws(500, 3);
    auto y = testutil::normal_draws(500, 4);
    for (std::size_t i = 0; i < y.size(); ++i) y[i] += 0.4 * x[i];
    const auto base = ellipse_stats(x, y);
    std::vector<double> x2(x), y2(y);
    for (auto& v : x2) v = 3.0 * v + 7.0;
    for (auto& v : y2) v = 3.0 * v - 2.0;
    const auto scaled = ellipse_stats(x2, y2);
    EXPECT_NEAR(scaled.bcea_deg2, 9.0 * base.bcea_deg2, 1e-9 * base.bcea_deg2 * 9.0);
    EXPECT_NEAR(scaled.rho, base.rho, 1e-12);
    EXPECT_NEAR(scaled.gi, base.gi, 1e-9);
    EXPECT_NEAR(scaled.mse_deg2, 9.0 * base.mse_deg2, 1e-9);
}

TEST(Bcea, ElongatedCloudAxisIndex) {
    auto x = testutil::normal_draws(20000, 5, 0.0, 2.0);
    auto y = testutil::normal_draws(20000, 6, 0.0, 0.5);
    // rotate by 30 degrees: the axis ratio must not depend on orientation
    const double c = std::cos(0.5236), s = std::sin(0.5236);
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double a = x[i], b = y[i];
        x[i] = c * a - s * b;
        y[i] = s * a + c * b;
    }
    const auto st = ellipse_stats(x, y);
    EXPECT_NEAR(st.gi, 4.0, 0.15);
    EXPECT_NEAR(st.mse_deg2, 0.25, 0.02);
    EXPECT_NEAR(st.sd_parallel_deg, 2.0, 0.05);
    EXPECT_NEAR(std::fmod(st.major_axis_angle_rad + std::numbers::pi, std::numbers::pi), 0.5236, 0.03);
    EXPECT_GE(st.gi, 1.0);
}

TEST(Bcea, Degenerate) {
    const std::vector<double> x{1, 2, 3, 4}, flat{0, 0, 0, 0}, line{2, 4, 6, 8};
    EXPECT_THROW(ellipse_stats(x, flat), Error);
    EXPECT_THROW(ellipse_stats(x, line), Error);
    try {
        ellipse_stats(std::vector<double>{1, 2}, std::vector<double>{1, 3});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::TooFewPoints);
    }
}

TEST(Prl, OneAndTwoClusters) {
    auto x = testutil::normal_draws(2000, 7, 0.0, 0.5);
    auto y = testutil::normal_draws(2000, 8, 0.0, 0.5);
    EXPECT_EQ(count_prls(x, y), 1);
    for (std::size_t i = 1000; i < x.size(); ++i) x[i] += 5.0;
    EXPECT_EQ(count_prls(x, y), 2);
}

TEST(Prl, ThreeClusters) {
    auto x = testutil::normal_draws(3000, 9, 0.0, 0.4);
    auto y = testutil::normal_draws(3000, 10, 0.0, 0.4);
    for (std::size_t i = 1000; i < 2000; ++i) x[i] += 6.0;
    for (std::size_t i = 2000; i < 3000; ++i) y[i] += 6.0;
    EXPECT_EQ(count_prls(x, y), 3);
}

TEST(Prl, Errors) {
    const std::vector<double> few(5, 1.0);
    EXPECT_THROW(count_prls(few, few), Error);
    const std::vector<double> flat(50, 1.0);
    const auto x = testutil::normal_draws(50, 11);
    EXPECT_THROW(count_prls(x, flat), Error);
}

TEST(Entropy, MatchesBruteForce) {
    for (std::uint64_t seed = 1; seed <= 4; ++seed) {
        const auto x = ar1(300, seed, 0.3 * static_cast<double>(seed));
        const double r = 0.2 * pop_sd(x);
        EXPECT_NEAR(sample_entropy_window(x, 2, r), brute_sampen(x, 2, r), 1e-9);
        EXPECT_NEAR(approximate_entropy_window(x, 2, r), brute_apen(x, 2, r), 1e-9);
        EXPECT_NEAR(sample_entropy_window(x, 3, r), brute_sampen(x, 3, r), 1e-9);
        EXPECT_NEAR(approximate_entropy_window(x, 1, r), brute_apen(x, 1, r), 1e-9);
    }
}

TEST(Entropy, SineIsMoreRegularThanNoise) {
    std::vector<double> sine(1000);
    for (std::size_t i = 0; i < sine.size(); ++i) sine[i] = std::sin(0.1 * static_cast<double>(i));
    const auto noise = testutil::normal_draws(1000, 12);
    const auto s = entropies(sine), w = entropies(noise);
    EXPECT_LT(s.sampen, w.sampen);
    EXPECT_LT(s.apen, w.apen);
    EXPECT_GT(w.sampen, 1.5);
}

TEST(Entropy, NoMatchGivesInfinity) {
    std::vector<double> x(20);
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = static_cast<double>(i * i);
    EXPECT_TRUE(std::isinf(sample_entropy_window(x, 2, 0.5)));
    EXPECT_TRUE(std::isfinite(approximate_entropy_window(x, 2, 0.5)));
}

TEST(Entropy, WindowingAveragesFullWindowsAndLongTail) {
    const auto x = ar1(7000, 13, 0.5);
    EntropyOptions o;
    auto window_value = [&](std::size_t from, std::size_t len) {
        std::vector<double> w(x.begin() + from, x.begin() + from + len);
        return sample_entropy_window(w, 2, 0.2 * pop_sd(w));
    };
    const double expect = (window_value(0, 3000) + window_value(3000, 3000) + window_value(6000, 1000)) / 3.0;
    EXPECT_NEAR(sample_entropy(x, o), expect, 1e-9);

    const std::vector<double> y(x.begin(), x.begin() + 6500);  // 500-sample tail dropped
    EXPECT_NEAR(sample_entropy(y, o), (window_value(0, 3000) + window_value(3000, 3000)) / 2.0, 1e-9);
}

TEST(Entropy, ConstantWindowContributesZero) {
    auto x = ar1(3000, 14, 0.2);
    std::vector<double> y(x);
    y.insert(y.end(), 3000, 1.5);
    EXPECT_NEAR(sample_entropy(y), sample_entropy(x) / 2.0, 1e-12);
    EXPECT_NEAR(approximate_entropy(y), approximate_entropy(x) / 2.0, 1e-12);
}

TEST(Entropy, ShortSeries) {
    const auto x = testutil::normal_draws(50, 15);
    try {
        sample_entropy(x);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::SeriesTooShort);
    }
}

TEST(DispersionFeatures, RecordingLevel) {
    auto x = testutil::normal_draws(3000, 16, 1.0, 0.5);
    auto y = testutil::normal_draws(3000, 17, -2.0, 0.5);
    auto rec = testutil::make_recording(x, y);
    rec.gaze_present[10] = 0;
    rec.x_deg[10] = 1e6;  // absent samples never leak in
    std::vector<FixationInterval> fix{{0, 3000, 30000.0}};
    const auto f = dispersion_features(rec, fix);
    ASSERT_TRUE(f[0] && f[1] && f[5] && f[6] && f[9] && f[12]);
    EXPECT_NEAR(*f[0], 1.0, 0.05);
    EXPECT_NEAR(*f[1], -2.0, 0.05);
    EXPECT_NEAR(*f[5], 3600.0 * 6.0 * std::numbers::pi * 0.25, 3600.0 * 0.5);
    EXPECT_EQ(*f[6], 1.0);

    const auto none = dispersion_features(rec, {});
    EXPECT_FALSE(none[6].has_value());
    EXPECT_TRUE(none[5].has_value());
}

TEST(DispersionFeatures, ConstantTraceHasNoEntropy) {
    auto rec = testutil::make_recording(std::vector<double>(500, 0.0), std::vector<double>(500, 1.0));
    const auto f = dispersion_features(rec, {});
    EXPECT_EQ(*f[0], 0.0);
    for (std::size_t i = 2; i < f.size(); ++i) EXPECT_FALSE(f[i].has_value()) << i;
}
