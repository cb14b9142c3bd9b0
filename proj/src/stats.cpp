#include "oculo/stats.h"

#include <algorithm>
#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/fisher_f.hpp>
#include <boost/math/distributions/normal.hpp>
#include <boost/math/distributions/students_t.hpp>
#include <charconv>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

#include "oculo/descriptive.h"
#include "oculo/error.h"

namespace oculo::stats {

namespace bm = boost::math;

std::vector<double> impute_median(std::span<const FeatureValue> column) {
    std::vector<double> present;
    for (const auto& v : column) {
        if (v) present.push_back(*v);
    }
    if (present.empty()) throw Error(ErrorCode::AllMissingFeature, "no present value to impute from");
    const double med = median(present);
    std::vector<double> out;
    out.reserve(column.size());
    for (const auto& v : column) out.push_back(v ? *v : med);
    return out;
}

// ---------------------------------------------------------------- Shapiro-Wilk

namespace {

double poly(std::span<const double> c, double x) {
    double ret = c[0];
    if (c.size() > 1) {
        double p = x * c[c.size() - 1];
        for (std::size_t j = c.size() - 2; j > 0; --j) p = (p + c[j]) * x;
        ret += p;
    }
    return ret;
}

double qnorm(double p) { return bm::quantile(bm::normal(), p); }

double pnorm_upper(double x, double mu, double sd) {
    return bm::cdf(bm::complement(bm::normal(mu, sd), x));
}

}  // namespace

ShapiroWilk shapiro_wilk(std::span<const double> sample) {
    const std::size_t n = sample.size();
    if (n < 3) throw Error(ErrorCode::SampleTooSmall, "Shapiro-Wilk needs n >= 3");
    if (n > 5000) throw Error(ErrorCode::OutOfRange, "Shapiro-Wilk supports n <= 5000");

    std::vector<double> x(sample.begin(), sample.end());
    std::sort(x.begin(), x.end());
    const double range = x.back() - x.front();
    if (!(range > 1e-19 * std::max(1.0, std::abs(x.front())))) {
        throw Error(ErrorCode::ZeroVariance, "all values identical");
    }

    static constexpr double g[] = {-2.273, 0.459};
    static constexpr double c1[] = {0.0, 0.221157, -0.147981, -2.07119, 4.434685, -2.706056};
    static constexpr double c2[] = {0.0, 0.042981, -0.293762, -1.752461, 5.682633, -3.582633};
    static constexpr double c3[] = {0.544, -0.39978, 0.025054, -6.714e-4};
    static constexpr double c4[] = {1.3822, -0.77857, 0.062767, -0.0020322};
    static constexpr double c5[] = {-1.5861, -0.31082, -0.083751, 0.0038915};
    static constexpr double c6[] = {-0.4803, -0.082676, 0.0030302};

    const std::size_t nn2 = n / 2;
    const double an = static_cast<double>(n);
    // a[1..nn2], 1-based to mirror the published algorithm.
    std::vector<double> a(nn2 + 1, 0.0);
    if (n == 3) {
        a[1] = std::sqrt(0.5);
    } else {
        const double an25 = an + 0.25;
        std::vector<double> m(nn2 + 1, 0.0);
        double summ2 = 0.0;
        for (std::size_t i = 1; i <= nn2; ++i) {
            m[i] = qnorm((static_cast<double>(i) - 0.375) / an25);
            summ2 += m[i] * m[i];
        }
        summ2 *= 2.0;
        const double ssumm2 = std::sqrt(summ2);
        const double rsn = 1.0 / std::sqrt(an);
        const double a1 = poly(c1, rsn) - m[1] / ssumm2;
        std::size_t i1;
        double fac;
        if (n > 5) {
            i1 = 3;
            const double a2 = -m[2] / ssumm2 + poly(c2, rsn);
            fac = std::sqrt((summ2 - 2.0 * m[1] * m[1] - 2.0 * m[2] * m[2]) /
                            (1.0 - 2.0 * a1 * a1 - 2.0 * a2 * a2));
            a[2] = a2;
        } else {
            i1 = 2;
            fac = std::sqrt((summ2 - 2.0 * m[1] * m[1]) / (1.0 - 2.0 * a1 * a1));
        }
        a[1] = a1;
        for (std::size_t i = i1; i <= nn2; ++i) a[i] = -m[i] / fac;
    }

    // W as the squared correlation between the ordered data and the coefficients.
    const auto coef = [&](std::size_t i) {  // antisymmetric coefficient for 0-based index i
        const std::size_t j = n - 1 - i;
        if (i == j) return 0.0;
        const std::size_t k = std::min(i, j) + 1;
        return i < j ? -a[k] : a[k];
    };
    double sa = 0.0, sx = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sa += coef(i);
        sx += x[i] / range;
    }
    sa /= an;
    sx /= an;
    double ssa = 0.0, ssx = 0.0, sax = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double asa = coef(i) - sa;
        const double xsx = x[i] / range - sx;
        ssa += asa * asa;
        ssx += xsx * xsx;
        sax += asa * xsx;
    }
    const double ssassx = std::sqrt(ssa * ssx);
    const double w1 = (ssassx - sax) * (ssassx + sax) / (ssa * ssx);
    ShapiroWilk out;
    out.w = 1.0 - w1;

    if (n == 3) {
        constexpr double pi6 = 1.90985931710274;   // 6 / pi
        constexpr double stqr = 1.04719755119660;  // pi / 3
        out.p = std::max(0.0, pi6 * (std::asin(std::sqrt(out.w)) - stqr));
        return out;
    }
    double y = std::log(w1);
    const double xx = std::log(an);
    double mean_, sd_;
    if (n <= 11) {
        const double gamma = poly(g, an);
        if (y >= gamma) {
            out.p = 1e-99;
            return out;
        }
        y = -std::log(gamma - y);
        mean_ = poly(c3, an);
        sd_ = std::exp(poly(c4, an));
    } else {
        mean_ = poly(c5, xx);
        sd_ = std::exp(poly(c6, xx));
    }
    out.p = pnorm_upper(y, mean_, sd_);
    return out;
}

// ---------------------------------------------------------------- omnibus

std::string_view to_string(OmnibusTest t) noexcept {
    return t == OmnibusTest::RepeatedMeasuresAnova ? "RM-ANOVA" : "Friedman";
}

namespace {

void check_design(std::span<const std::vector<double>> conds, std::size_t min_n) {
    if (conds.size() < 2) throw Error(ErrorCode::InvalidArgument, "need at least two conditions");
    const std::size_t n = conds[0].size();
    for (const auto& c : conds) {
        if (c.size() != n) throw Error(ErrorCode::UnequalN, "conditions differ in subject count");
    }
    if (n < min_n) throw Error(ErrorCode::SampleTooSmall, "too few subjects");
}

// Mid-ranks (1-based) of one row.
std::vector<double> midranks(std::span<const double> row) {
    const std::size_t k = row.size();
    std::vector<std::size_t> idx(k);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return row[a] < row[b]; });
    std::vector<double> r(k);
    std::size_t i = 0;
    while (i < k) {
        std::size_t j = i;
        while (j + 1 < k && row[idx[j + 1]] == row[idx[i]]) ++j;
        const double avg = 0.5 * static_cast<double>(i + j) + 1.0;
        for (std::size_t q = i; q <= j; ++q) r[idx[q]] = avg;
        i = j + 1;
    }
    return r;
}

double tie_term(std::span<const double> values) {
    std::vector<double> s(values.begin(), values.end());
    std::sort(s.begin(), s.end());
    double acc = 0.0;
    std::size_t i = 0;
    while (i < s.size()) {
        std::size_t j = i;
        while (j + 1 < s.size() && s[j + 1] == s[i]) ++j;
        const double t = static_cast<double>(j - i + 1);
        acc += t * t * t - t;
        i = j + 1;
    }
    return acc;
}

struct FriedmanParts {
    std::vector<std::vector<int>> doubled_ranks;  // per subject, 2 * mid-rank per condition
    double statistic = 0.0;
    bool degenerate = false;  // every subject tied across all conditions
};

FriedmanParts friedman_parts(std::span<const std::vector<double>> conds) {
    const std::size_t k = conds.size();
    const std::size_t n = conds[0].size();
    FriedmanParts fp;
    std::vector<double> rank_sum(k, 0.0);
    double ties = 0.0;
    std::vector<double> row(k);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < k; ++j) row[j] = conds[j][i];
        const auto r = midranks(row);
        std::vector<int> dr(k);
        for (std::size_t j = 0; j < k; ++j) {
            rank_sum[j] += r[j];
            dr[j] = static_cast<int>(std::lround(2.0 * r[j]));
        }
        fp.doubled_ranks.push_back(std::move(dr));
        ties += tie_term(row);
    }
    const double kd = static_cast<double>(k), nd = static_cast<double>(n);
    const double c = 1.0 - ties / (kd * (kd * kd - 1.0) * nd);
    if (c <= 1e-12) {
        fp.degenerate = true;
        return fp;
    }
    double ssbn = 0.0;
    for (double r : rank_sum) ssbn += r * r;
    fp.statistic = std::max(0.0, (12.0 / (kd * nd * (kd + 1.0)) * ssbn - 3.0 * nd * (kd + 1.0)) / c);
    return fp;
}

// Exact permutation p-value of the Friedman statistic. Under the null every
// distinct arrangement of a subject's ranks across conditions is equally
// likely; the statistic is monotone in the sum of squared rank sums, so the
// DP tracks the joint distribution of the first k-1 (doubled) rank sums.
std::optional<double> friedman_exact_p(const FriedmanParts& fp, std::size_t k) {
    constexpr std::size_t kMaxStates = 4'000'000;
    const std::size_t n = fp.doubled_ranks.size();
    const std::size_t dims = k - 1;
    const std::size_t base = 2 * k * n + 1;
    std::size_t states = 1;
    for (std::size_t d = 0; d < dims; ++d) {
        if (states > kMaxStates / base) return std::nullopt;
        states *= base;
    }

    std::vector<std::size_t> stride(dims, 1);
    for (std::size_t d = 1; d < dims; ++d) stride[d] = stride[d - 1] * base;

    std::vector<double> cur(states, 0.0), next(states, 0.0);
    cur[0] = 1.0;
    long long total = 0;
    long long observed_ss = 0;
    std::vector<long long> obs_sum(k, 0);
    for (const auto& r : fp.doubled_ranks) {
        for (std::size_t j = 0; j < k; ++j) obs_sum[j] += r[j];
    }
    for (auto s : obs_sum) observed_ss += s * s;

    std::size_t lo = 0, hi = 0;  // reachable range of every tracked sum
    for (const auto& row : fp.doubled_ranks) {
        std::vector<int> perm(row);
        std::sort(perm.begin(), perm.end());
        std::vector<std::vector<int>> perms;
        do perms.push_back(perm);
        while (std::next_permutation(perm.begin(), perm.end()));
        const double w = 1.0 / static_cast<double>(perms.size());
        const int rmin = perm.front(), rmax = perm.back();
        total += std::accumulate(row.begin(), row.end(), 0LL);

        std::fill(next.begin(), next.end(), 0.0);
        // Walk the hypercube [lo, hi]^dims of reachable states.
        std::vector<std::size_t> coord(dims, lo);
        while (true) {
            std::size_t idx = 0;
            for (std::size_t d = 0; d < dims; ++d) idx += coord[d] * stride[d];
            const double pr = cur[idx];
            if (pr != 0.0) {
                for (const auto& p : perms) {
                    std::size_t to = idx;
                    for (std::size_t d = 0; d < dims; ++d) to += static_cast<std::size_t>(p[d]) * stride[d];
                    next[to] += pr * w;
                }
            }
            std::size_t d = 0;
            while (d < dims && ++coord[d] > hi) coord[d++] = lo;
            if (d == dims) break;
        }
        std::swap(cur, next);
        lo += static_cast<std::size_t>(rmin);
        hi += static_cast<std::size_t>(rmax);
    }

    double p = 0.0;
    std::vector<std::size_t> coord(dims, lo);
    while (true) {
        std::size_t idx = 0;
        long long partial = 0, ss = 0;
        for (std::size_t d = 0; d < dims; ++d) {
            idx += coord[d] * stride[d];
            partial += static_cast<long long>(coord[d]);
            ss += static_cast<long long>(coord[d]) * static_cast<long long>(coord[d]);
        }
        const long long last = total - partial;
        ss += last * last;
        if (cur[idx] != 0.0 && ss >= observed_ss) p += cur[idx];
        std::size_t d = 0;
        while (d < dims && ++coord[d] > hi) coord[d++] = lo;
        if (d == dims) break;
    }
    return std::clamp(p, 0.0, 1.0);
}

}  // namespace

OmnibusResult rm_anova(std::span<const std::vector<double>> conds) {
    check_design(conds, 2);
    const std::size_t k = conds.size(), n = conds[0].size();
    const double kd = static_cast<double>(k), nd = static_cast<double>(n);
    double grand = 0.0;
    for (const auto& c : conds) grand += std::accumulate(c.begin(), c.end(), 0.0);
    grand /= kd * nd;

    double ss_total = 0.0, ss_cond = 0.0, ss_subj = 0.0;
    for (const auto& c : conds) {
        const double m = mean(c);
        ss_cond += nd * (m - grand) * (m - grand);
        for (double v : c) ss_total += (v - grand) * (v - grand);
    }
    for (std::size_t i = 0; i < n; ++i) {
        double m = 0.0;
        for (const auto& c : conds) m += c[i];
        m /= kd;
        ss_subj += kd * (m - grand) * (m - grand);
    }
    const double ss_err = std::max(0.0, ss_total - ss_cond - ss_subj);
    OmnibusResult r;
    r.test = OmnibusTest::RepeatedMeasuresAnova;
    r.df1 = kd - 1.0;
    r.df2 = (kd - 1.0) * (nd - 1.0);
    const double scale = std::max(1.0, ss_total);
    if (ss_cond <= 1e-14 * scale) {
        r.statistic = 0.0;
        r.p = 1.0;
        return r;
    }
    if (ss_err <= 1e-14 * scale) {
        r.statistic = std::numeric_limits<double>::infinity();
        r.p = 0.0;
        return r;
    }
    r.statistic = (ss_cond / r.df1) / (ss_err / r.df2);
    r.p = bm::cdf(bm::complement(bm::fisher_f(r.df1, r.df2), r.statistic));
    return r;
}

double friedman_statistic(std::span<const std::vector<double>> conds) {
    check_design(conds, 1);
    return friedman_parts(conds).statistic;
}

OmnibusResult friedman(std::span<const std::vector<double>> conds) {
    check_design(conds, 2);
    const auto fp = friedman_parts(conds);
    OmnibusResult r;
    r.test = OmnibusTest::Friedman;
    r.df1 = static_cast<double>(conds.size() - 1);
    if (fp.degenerate) {
        r.statistic = 0.0;
        r.p = 1.0;
        r.exact = true;
        return r;
    }
    r.statistic = fp.statistic;
    if (auto exact = friedman_exact_p(fp, conds.size())) {
        r.p = *exact;
        r.exact = true;
    } else {
        r.p = bm::cdf(bm::complement(bm::chi_squared(r.df1), r.statistic));
    }
    return r;
}

OmnibusResult omnibus(std::span<const std::vector<double>> conds, bool parametric) {
    check_design(conds, 5);
    return parametric ? rm_anova(conds) : friedman(conds);
}

// ---------------------------------------------------------------- FDR

std::vector<double> bh_fdr(std::span<const double> p) {
    const std::size_t m = p.size();
    for (double v : p) {
        if (!(v >= 0.0 && v <= 1.0)) throw Error(ErrorCode::OutOfRange, "p-value outside [0,1]");
    }
    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return p[a] < p[b]; });
    std::vector<double> adj(m);
    double running = 1.0;
    for (std::size_t r = m; r-- > 0;) {
        const double v = p[order[r]] * static_cast<double>(m) / static_cast<double>(r + 1);
        running = std::min(running, v);
        // m p / m can round one ulp below p
        adj[order[r]] = std::max(p[order[r]], std::min(1.0, running));
    }
    return adj;
}

// ---------------------------------------------------------------- pairwise

namespace {

std::vector<double> differences(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw Error(ErrorCode::LengthMismatch, "paired samples differ in length");
    std::vector<double> d(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
    return d;
}

}  // namespace

TTestResult paired_t(std::span<const double> a, std::span<const double> b) {
    const auto d = differences(a, b);
    if (d.size() < 2) throw Error(ErrorCode::SampleTooSmall, "paired t needs two pairs");
    TTestResult r;
    r.df = static_cast<double>(d.size() - 1);
    const double m = mean(d);
    const double sd = sample_sd(d);
    if (!(sd > 0.0)) {
        r.t = m == 0.0 ? 0.0 : std::copysign(std::numeric_limits<double>::infinity(), m);
        r.p = m == 0.0 ? 1.0 : 0.0;
        return r;
    }
    r.t = m / (sd / std::sqrt(static_cast<double>(d.size())));
    r.p = std::min(1.0, 2.0 * bm::cdf(bm::complement(bm::students_t(r.df), std::abs(r.t))));
    return r;
}

WilcoxonResult wilcoxon_signed_rank(std::span<const double> diffs) {
    std::vector<double> d;
    for (double v : diffs) {
        if (v != 0.0) d.push_back(v);
    }
    if (d.empty()) throw Error(ErrorCode::AllZeroDifferences, "every paired difference is zero");
    const std::size_t n = d.size();
    std::vector<double> absd(n);
    for (std::size_t i = 0; i < n; ++i) absd[i] = std::abs(d[i]);
    const auto ranks = midranks(absd);

    WilcoxonResult r;
    r.n_used = n;
    double w_plus = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (d[i] > 0.0) w_plus += ranks[i];
    }
    const double total = static_cast<double>(n * (n + 1)) / 2.0;
    r.w_plus = w_plus;
    r.statistic = std::min(w_plus, total - w_plus);

    if (n <= kWilcoxonExactMaxN) {
        // Distribution of the doubled positive-rank sum over all 2^n sign patterns.
        std::vector<int> dr(n);
        int max_sum = 0;
        for (std::size_t i = 0; i < n; ++i) {
            dr[i] = static_cast<int>(std::lround(2.0 * ranks[i]));
            max_sum += dr[i];
        }
        std::vector<double> count(static_cast<std::size_t>(max_sum) + 1, 0.0);
        count[0] = 1.0;
        int reach = 0;
        for (int v : dr) {
            for (int s = reach; s >= 0; --s) {
                if (count[s] != 0.0) count[s + v] += count[s];
            }
            reach += v;
        }
        const double all = std::ldexp(1.0, static_cast<int>(n));
        const int obs = static_cast<int>(std::lround(2.0 * w_plus));
        double le = 0.0, ge = 0.0;
        for (int s = 0; s <= max_sum; ++s) {
            if (s <= obs) le += count[s];
            if (s >= obs) ge += count[s];
        }
        r.p = std::min(1.0, 2.0 * std::min(le, ge) / all);
        r.exact = true;
        return r;
    }

    const double nd = static_cast<double>(n);
    const double mu = nd * (nd + 1.0) / 4.0;
    const double var = nd * (nd + 1.0) * (2.0 * nd + 1.0) / 24.0 - tie_term(absd) / 48.0;
    if (!(var > 0.0)) {
        r.p = 1.0;
        return r;
    }
    const double z = std::max(0.0, std::abs(w_plus - mu) - 0.5) / std::sqrt(var);
    r.p = std::min(1.0, 2.0 * bm::cdf(bm::complement(bm::normal(), z)));
    return r;
}

double cohens_dz(std::span<const double> a, std::span<const double> b) {
    const auto d = differences(a, b);
    const double m = mean(d);
    const double sd = sample_sd(d);
    if (!(sd > 0.0)) return m == 0.0 ? 0.0 : std::copysign(std::numeric_limits<double>::infinity(), m);
    return m / sd;
}

double cliffs_delta(std::span<const double> a, std::span<const double> b) {
    if (a.empty() || b.empty()) throw Error(ErrorCode::SampleTooSmall, "empty sample");
    long long more = 0, less = 0;
    for (double x : a) {
        for (double y : b) {
            if (x > y) ++more;
            else if (x < y) ++less;
        }
    }
    return static_cast<double>(more - less) / (static_cast<double>(a.size()) * static_cast<double>(b.size()));
}

std::string_view to_string(TestKind k) noexcept {
    return k == TestKind::PairedT ? "paired t-test" : "Wilcoxon signed-rank";
}

std::string_view to_string(EffectKind k) noexcept {
    return k == EffectKind::CohensD ? "Cohen's d" : "Cliff's delta";
}

std::string_view to_string(EffectLabel l) noexcept {
    switch (l) {
        case EffectLabel::Negligible: return "negligible";
        case EffectLabel::Small: return "small";
        case EffectLabel::Medium: return "medium";
        case EffectLabel::Large: return "large";
        case EffectLabel::VeryLarge: return "very large";
        case EffectLabel::Huge: return "huge";
    }
    return "negligible";
}

CohenBands CohenBands::parse(std::string_view text) {
    CohenBands b;
    std::size_t pos = 0;
    for (std::size_t i = 0; i < b.bounds.size(); ++i) {
        const auto comma = text.find(',', pos);
        const auto piece = text.substr(pos, comma == std::string_view::npos ? text.size() - pos : comma - pos);
        double v = 0.0;
        auto [ptr, ec] = std::from_chars(piece.data(), piece.data() + piece.size(), v);
        if (ec != std::errc() || ptr != piece.data() + piece.size() || !(v > 0.0) ||
            (i > 0 && !(v > b.bounds[i - 1]))) {
            throw Error(ErrorCode::InvalidArgument, "Cohen bands must be five increasing positive numbers");
        }
        b.bounds[i] = v;
        if (i + 1 < b.bounds.size()) {
            if (comma == std::string_view::npos) {
                throw Error(ErrorCode::InvalidArgument, "Cohen bands need five values");
            }
            pos = comma + 1;
        } else if (comma != std::string_view::npos) {
            throw Error(ErrorCode::InvalidArgument, "Cohen bands need five values");
        }
    }
    return b;
}

EffectLabel label_effect(EffectKind kind, double value, const CohenBands& bands) {
    if (std::isnan(value)) throw Error(ErrorCode::OutOfRange, "effect size is NaN");
    const double a = std::abs(value);
    if (kind == EffectKind::CliffsDelta) {
        if (a > 1.0 + 1e-12) throw Error(ErrorCode::OutOfRange, "Cliff's delta outside [-1, 1]");
        if (a < 0.147) return EffectLabel::Negligible;
        if (a < 0.33) return EffectLabel::Small;
        if (a < 0.474) return EffectLabel::Medium;
        if (a < 0.714) return EffectLabel::Large;
        return EffectLabel::VeryLarge;
    }
    static constexpr EffectLabel labels[] = {EffectLabel::Negligible, EffectLabel::Small, EffectLabel::Medium,
                                             EffectLabel::Large, EffectLabel::VeryLarge};
    for (std::size_t i = 0; i < bands.bounds.size(); ++i) {
        if (a < bands.bounds[i]) return labels[i];
    }
    return EffectLabel::Huge;
}

PairwiseResult pairwise(std::span<const double> a, std::span<const double> b, bool parametric,
                        const CohenBands& bands) {
    if (a.size() != b.size()) throw Error(ErrorCode::LengthMismatch, "paired samples differ in length");
    if (a.size() < 5) throw Error(ErrorCode::SampleTooSmall, "pairwise tests need at least 5 pairs");
    PairwiseResult r;
    if (parametric) {
        const auto t = paired_t(a, b);
        r.test = TestKind::PairedT;
        r.statistic = t.t;
        r.p_raw = t.p;
        r.effect = EffectKind::CohensD;
        r.effect_value = cohens_dz(a, b);
    } else {
        const auto w = wilcoxon_signed_rank(differences(a, b));
        r.test = TestKind::Wilcoxon;
        r.statistic = w.statistic;
        r.p_raw = w.p;
        r.effect = EffectKind::CliffsDelta;
        r.effect_value = cliffs_delta(a, b);
    }
    r.p_adj = r.p_raw;
    r.label = label_effect(r.effect, r.effect_value, bands);
    return r;
}

// ---------------------------------------------------------------- report

std::vector<PairwiseResult> StatReport::significant_rows() const {
    std::vector<PairwiseResult> rows;
    for (const auto& f : features) {
        for (const auto& p : f.pairwise) {
            if (p.p_adj < alpha) rows.push_back(p);
        }
    }
    return rows;
}

StatReport run_report(std::span<const FeatureVector> cohort, const ReportOptions& opts) {
    std::map<std::string, std::array<const FeatureVector*, 3>> by_subject;
    for (const auto& fv : cohort) {
        auto& slot = by_subject[fv.subject_id];
        slot[static_cast<std::size_t>(fv.condition)] = &fv;
    }
    StatReport rep;
    rep.alpha = opts.alpha;
    std::vector<std::array<const FeatureVector*, 3>> rows;
    for (const auto& [subject, slots] : by_subject) {
        if (std::all_of(slots.begin(), slots.end(), [](const FeatureVector* p) { return p != nullptr; })) {
            rep.subjects.push_back(subject);
            rows.push_back(slots);
        } else {
            rep.incomplete_subjects.push_back(subject);
        }
    }
    rep.n_subjects = rows.size();
    if (rep.n_subjects < std::max<std::size_t>(opts.min_subjects, 5)) {
        throw Error(ErrorCode::TooFewSubjects,
                    std::to_string(rep.n_subjects) + " complete subjects, need " +
                        std::to_string(std::max<std::size_t>(opts.min_subjects, 5)));
    }

    std::vector<std::array<std::vector<double>, 3>> imputed(kFeatureCount);
    std::vector<std::size_t> tested;
    for (std::size_t f = 0; f < kFeatureCount; ++f) {
        FeatureReport fr;
        fr.name = std::string(feature_names()[f].name);
        fr.unit = std::string(feature_names()[f].unit);
        try {
            for (std::size_t c = 0; c < 3; ++c) {
                std::vector<FeatureValue> col;
                for (const auto& r : rows) col.push_back(r[c]->values[f]);
                imputed[f][c] = impute_median(col);
            }
        } catch (const Error& e) {
            fr.skipped = e.what();
            rep.features.push_back(std::move(fr));
            continue;
        }
        bool all_normal = true;
        for (std::size_t c = 0; c < 3; ++c) {
            auto& nc = fr.normality[c];
            nc.condition = kConditions[c];
            try {
                nc.result = shapiro_wilk(imputed[f][c]);
                nc.normal = nc.result->p > opts.alpha;
            } catch (const Error&) {
                nc.normal = false;
            }
            all_normal = all_normal && nc.normal;
        }
        fr.parametric = all_normal;
        fr.omnibus = omnibus(imputed[f], fr.parametric);
        tested.push_back(f);
        rep.features.push_back(std::move(fr));
    }

    std::vector<double> pvals;
    for (std::size_t f : tested) pvals.push_back(rep.features[f].omnibus->p);
    const auto adj = bh_fdr(pvals);

    static constexpr std::array<std::pair<std::size_t, std::size_t>, 3> kPairs{{{0, 1}, {0, 2}, {1, 2}}};
    for (std::size_t t = 0; t < tested.size(); ++t) {
        auto& fr = rep.features[tested[t]];
        fr.omnibus_p_adj = adj[t];
        if (!(adj[t] < opts.alpha)) continue;
        const auto& cols = imputed[tested[t]];
        for (const auto& [i, j] : kPairs) {
            PairwiseResult pr;
            try {
                pr = pairwise(cols[i], cols[j], fr.parametric, opts.cohen_bands);
            } catch (const Error& e) {
                if (e.code() != ErrorCode::AllZeroDifferences) throw;
                // Identical paired values: no evidence of a difference.
                pr.test = TestKind::Wilcoxon;
                pr.statistic = 0.0;
                pr.p_raw = 1.0;
                pr.effect = EffectKind::CliffsDelta;
                pr.effect_value = cliffs_delta(cols[i], cols[j]);
                pr.label = label_effect(pr.effect, pr.effect_value, opts.cohen_bands);
            }
            pr.feature = fr.name;
            pr.pair = {kConditions[i], kConditions[j]};
            fr.pairwise.push_back(pr);
        }
        std::vector<double> raw;
        for (const auto& p : fr.pairwise) raw.push_back(p.p_raw);
        const auto padj = bh_fdr(raw);
        for (std::size_t q = 0; q < fr.pairwise.size(); ++q) fr.pairwise[q].p_adj = padj[q];
    }
    return rep;
}

}  // namespace oculo::stats
