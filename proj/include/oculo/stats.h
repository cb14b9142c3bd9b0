#pragma once

// Cohort statistics: median imputation, Shapiro-Wilk normality gate,
// repeated-measures ANOVA / Friedman omnibus tests, Benjamini-Hochberg FDR,
// paired t / Wilcoxon signed-rank post-hoc tests, Cohen's d_z / Cliff's delta
// effect sizes and their verbal labels.

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "oculo/model.h"

namespace oculo::stats {

/// Replaces missing cells by the median of the present ones.
/// Throws AllMissingFeature when nothing is present.
std::vector<double> impute_median(std::span<const FeatureValue> column);

struct ShapiroWilk {
    double w = 0.0;
    double p = 0.0;
};

/// Royston's AS R94 approximation, 3 <= n <= 5000.
/// Throws SampleTooSmall / OutOfRange on size, ZeroVariance on a constant sample.
ShapiroWilk shapiro_wilk(std::span<const double> sample);

enum class OmnibusTest { RepeatedMeasuresAnova, Friedman };
std::string_view to_string(OmnibusTest t) noexcept;

struct OmnibusResult {
    OmnibusTest test = OmnibusTest::Friedman;
    double statistic = 0.0;
    double p = 1.0;
    double df1 = 0.0;
    double df2 = 0.0;  // 0 for Friedman
    bool exact = false;  // Friedman p from the exact permutation distribution
};

/// One-way repeated-measures ANOVA; conditions[j][i] is subject i in condition j.
OmnibusResult rm_anova(std::span<const std::vector<double>> conditions);

/// Friedman chi-square with mid-ranks and tie correction. The p-value is the
/// exact within-subject permutation probability when the rank-sum state space
/// is small enough to enumerate, otherwise the chi-square approximation.
OmnibusResult friedman(std::span<const std::vector<double>> conditions);

/// Friedman statistic only (shared by the test and its permutation checks).
double friedman_statistic(std::span<const std::vector<double>> conditions);

/// Requires >= 2 conditions of equal length >= 5 (UnequalN / SampleTooSmall).
OmnibusResult omnibus(std::span<const std::vector<double>> conditions, bool parametric);

/// Benjamini-Hochberg step-up adjusted p-values, in input order.
std::vector<double> bh_fdr(std::span<const double> p_values);

struct TTestResult {
    double t = 0.0;
    double df = 0.0;
    double p = 1.0;
};

TTestResult paired_t(std::span<const double> a, std::span<const double> b);

struct WilcoxonResult {
    double statistic = 0.0;  // min(W+, W-)
    double w_plus = 0.0;
    double p = 1.0;
    std::size_t n_used = 0;  // non-zero differences
    bool exact = false;
};

inline constexpr std::size_t kWilcoxonExactMaxN = 25;

/// Signed-rank test on paired differences. Zero differences are dropped;
/// exact null distribution for n <= 25, otherwise the normal approximation
/// with tie and continuity correction. Throws AllZeroDifferences.
WilcoxonResult wilcoxon_signed_rank(std::span<const double> differences);

/// mean(a - b) / sd(a - b).
double cohens_dz(std::span<const double> a, std::span<const double> b);

/// (#{a_i > b_j} - #{a_i < b_j}) / (n_a n_b) over all cross pairs.
double cliffs_delta(std::span<const double> a, std::span<const double> b);

enum class TestKind { PairedT, Wilcoxon };
enum class EffectKind { CohensD, CliffsDelta };
enum class EffectLabel { Negligible, Small, Medium, Large, VeryLarge, Huge };

std::string_view to_string(TestKind k) noexcept;
std::string_view to_string(EffectKind k) noexcept;
std::string_view to_string(EffectLabel l) noexcept;

/// Upper bounds of |d| for negligible, small, medium, large and very large;
/// anything at or above the last bound is huge.
struct CohenBands {
    std::array<double, 5> bounds{0.2, 0.5, 0.8, 1.2, 2.0};

    /// "0.2,0.5,0.8,1.2,2.0"; throws InvalidArgument unless five increasing positives.
    static CohenBands parse(std::string_view text);
};

/// Cliff's |delta| bands: < 0.147 negligible, < 0.33 small, < 0.474 medium,
/// < 0.714 large, otherwise very large. Throws OutOfRange for |delta| > 1 or NaN.
EffectLabel label_effect(EffectKind kind, double value, const CohenBands& bands = {});

struct PairwiseResult {
    std::string feature;
    std::pair<Condition, Condition> pair{Condition::Baseline, Condition::Ride};
    TestKind test = TestKind::Wilcoxon;
    double statistic = 0.0;
    double p_raw = 1.0;
    double p_adj = 1.0;
    EffectKind effect = EffectKind::CliffsDelta;
    double effect_value = 0.0;
    EffectLabel label = EffectLabel::Negligible;
};

/// Paired comparison a vs b. Throws LengthMismatch, SampleTooSmall (< 5 pairs),
/// AllZeroDifferences (Wilcoxon branch).
PairwiseResult pairwise(std::span<const double> a, std::span<const double> b, bool parametric,
                        const CohenBands& bands = {});

struct NormalityCheck {
    Condition condition = Condition::Baseline;
    std::optional<ShapiroWilk> result;  // empty when the test could not run
    bool normal = false;
};

struct FeatureReport {
    std::string name;
    std::string unit;
    std::string skipped;  // non-empty when the feature could not be tested
    std::array<NormalityCheck, 3> normality{};
    bool parametric = false;
    std::optional<OmnibusResult> omnibus;
    double omnibus_p_adj = 1.0;
    std::vector<PairwiseResult> pairwise;  // only when omnibus_p_adj < alpha
};

struct StatReport {
    std::size_t n_subjects = 0;
    std::vector<std::string> subjects;
    std::vector<std::string> incomplete_subjects;
    double alpha = 0.05;
    std::vector<FeatureReport> features;

    /// Post-hoc comparisons with p_adj < alpha, in feature order.
    std::vector<PairwiseResult> significant_rows() const;
};

struct ReportOptions {
    double alpha = 0.05;
    CohenBands cohen_bands;
    std::size_t min_subjects = 5;
};

/// impute -> normality gate -> omnibus -> BH across features -> pairwise tests
/// (BH within each feature's three comparisons) for significant features.
/// Throws TooFewSubjects when fewer than opts.min_subjects have all conditions.
StatReport run_report(std::span<const FeatureVector> cohort, const ReportOptions& opts = {});

}  // namespace oculo::stats
