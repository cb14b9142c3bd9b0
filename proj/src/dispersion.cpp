#include "oculo/dispersion.h"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numbers>
#include <vector>

#include "oculo/descriptive.h"
#include "oculo/error.h"

namespace oculo {

double bcea_deg2(double sd_h, double sd_v, double rho, double k) {
    return 2.0 * std::numbers::pi * k * sd_h * sd_v * std::sqrt(1.0 - rho * rho);
}

EllipseStats ellipse_stats(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw Error(ErrorCode::LengthMismatch, "x and y differ in length");
    if (x.size() < 3) throw Error(ErrorCode::TooFewPoints, "ellipse needs at least 3 samples");
    const double n = static_cast<double>(x.size());

    EllipseStats st;
    st.mean_h_deg = mean(x);
    st.mean_v_deg = mean(y);
    double sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - st.mean_h_deg;
        const double dy = y[i] - st.mean_v_deg;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    sxx /= n;
    syy /= n;
    sxy /= n;
    st.sd_h_deg = std::sqrt(sxx);
    st.sd_v_deg = std::sqrt(syy);
    if (!(st.sd_h_deg > 0.0) || !(st.sd_v_deg > 0.0)) {
        throw Error(ErrorCode::DegenerateDistribution, "zero spread along an axis");
    }
    st.rho = std::clamp(sxy / (st.sd_h_deg * st.sd_v_deg), -1.0, 1.0);

    // Eigen-decomposition of the 2x2 covariance.
    const double half_tr = 0.5 * (sxx + syy);
    const double disc = std::hypot(0.5 * (sxx - syy), sxy);
    const double lambda_major = half_tr + disc;
    const double lambda_minor = std::max(0.0, half_tr - disc);
    if (!(lambda_minor > 0.0) || std::abs(st.rho) >= 1.0) {
        throw Error(ErrorCode::DegenerateDistribution, "gaze samples are collinear");
    }
    st.bcea_deg2 = bcea_deg2(st.sd_h_deg, st.sd_v_deg, st.rho);
    st.bcea_minarc2 = kMinarc2PerDeg2 * st.bcea_deg2;
    st.major_axis_angle_rad = disc > 0.0 ? 0.5 * std::atan2(2.0 * sxy, sxx - syy) : 0.0;
    st.sd_parallel_deg = std::sqrt(lambda_major);
    st.sd_perpendicular_deg = std::sqrt(lambda_minor);
    st.gi = st.sd_parallel_deg / st.sd_perpendicular_deg;
    st.mse_deg2 = lambda_minor;
    return st;
}

int count_prls(std::span<const double> x, std::span<const double> y, const PrlOptions& opts) {
    if (x.size() != y.size()) throw Error(ErrorCode::LengthMismatch, "x and y differ in length");
    if (x.size() < 10) throw Error(ErrorCode::TooFewPoints, "PRL count needs at least 10 fixation samples");
    if (opts.grid < 2 || !(opts.mass > 0.0 && opts.mass <= 1.0)) {
        throw Error(ErrorCode::InvalidArgument, "bad PRL options");
    }
    const double n = static_cast<double>(x.size());
    const double silverman = std::pow(n, -1.0 / 6.0);
    const double hx = sample_sd(x) * silverman;
    const double hy = sample_sd(y) * silverman;
    if (!(hx > 0.0) || !(hy > 0.0)) throw Error(ErrorCode::DegenerateDistribution, "zero spread");

    const auto [xmin, xmax] = std::minmax_element(x.begin(), x.end());
    const auto [ymin, ymax] = std::minmax_element(y.begin(), y.end());
    const double x0 = *xmin - opts.pad * (*xmax - *xmin);
    const double x1 = *xmax + opts.pad * (*xmax - *xmin);
    const double y0 = *ymin - opts.pad * (*ymax - *ymin);
    const double y1 = *ymax + opts.pad * (*ymax - *ymin);
    const int g = opts.grid;
    const double dx = (x1 - x0) / g, dy = (y1 - y0) / g;

    std::vector<double> density(static_cast<std::size_t>(g) * g, 0.0);
    std::vector<double> kx(g), ky(g);
    constexpr double kCut = 6.0;  // kernel truncated beyond 6 bandwidths
    for (std::size_t p = 0; p < x.size(); ++p) {
        for (int k = 0; k < g; ++k) {
            const double ux = (x0 + (k + 0.5) * dx - x[p]) / hx;
            const double uy = (y0 + (k + 0.5) * dy - y[p]) / hy;
            kx[k] = std::abs(ux) < kCut ? std::exp(-0.5 * ux * ux) : 0.0;
            ky[k] = std::abs(uy) < kCut ? std::exp(-0.5 * uy * uy) : 0.0;
        }
        for (int r = 0; r < g; ++r) {
            if (ky[r] == 0.0) continue;
            double* row = density.data() + static_cast<std::size_t>(r) * g;
            for (int c = 0; c < g; ++c) row[c] += ky[r] * kx[c];
        }
    }

    std::vector<double> sorted(density);
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    double total = 0.0;
    for (double d : sorted) total += d;
    double level = sorted.front(), acc = 0.0;
    for (double d : sorted) {
        acc += d;
        level = d;
        if (acc >= opts.mass * total) break;
    }

    std::vector<int> label(density.size(), 0);
    int components = 0;
    std::deque<int> queue;
    for (int start = 0; start < g * g; ++start) {
        if (label[start] || density[start] < level) continue;
        ++components;
        label[start] = components;
        queue.push_back(start);
        while (!queue.empty()) {
            const int cell = queue.front();
            queue.pop_front();
            const int r = cell / g, c = cell % g;
            for (int dr = -1; dr <= 1; ++dr) {
                for (int dc = -1; dc <= 1; ++dc) {
                    const int rr = r + dr, cc = c + dc;
                    if (rr < 0 || rr >= g || cc < 0 || cc >= g) continue;
                    const int nb = rr * g + cc;
                    if (label[nb] || density[nb] < level) continue;
                    label[nb] = components;
                    queue.push_back(nb);
                }
            }
        }
    }
    return components;
}

namespace {

struct PairCounts {
    double sampen;
    double apen;
};

// One pass over template pairs (i < j) computing both SampEn(m, r) and
// ApEn(m, r) of a single window.
PairCounts entropy_counts(std::span<const double> x, int m_int, double r) {
    const std::size_t n = x.size();
    const std::size_t m = static_cast<std::size_t>(m_int);
    if (n < m + 2) throw Error(ErrorCode::SeriesTooShort, "window shorter than m + 2");
    const std::size_t nm = n - m;       // templates of length m + 1 (and SampEn length-m pool)
    const std::size_t nm1 = n - m + 1;  // templates of length m for ApEn

    std::vector<double> cm(nm1, 1.0), cm1(nm, 1.0);
    double a = 0.0, b = 0.0;
    for (std::size_t i = 0; i + 1 < nm1; ++i) {
        for (std::size_t j = i + 1; j < nm1; ++j) {
            bool match = true;
            for (std::size_t k = 0; k < m; ++k) {
                if (std::abs(x[i + k] - x[j + k]) > r) {
                    match = false;
                    break;
                }
            }
            if (!match) continue;
            cm[i] += 1.0;
            cm[j] += 1.0;
            if (j < nm) {
                b += 1.0;
                if (std::abs(x[i + m] - x[j + m]) <= r) {
                    a += 1.0;
                    cm1[i] += 1.0;
                    cm1[j] += 1.0;
                }
            }
        }
    }
    double phi_m = 0.0, phi_m1 = 0.0;
    for (double c : cm) phi_m += std::log(c / static_cast<double>(nm1));
    for (double c : cm1) phi_m1 += std::log(c / static_cast<double>(nm));
    phi_m /= static_cast<double>(nm1);
    phi_m1 /= static_cast<double>(nm);

    const double inf = std::numeric_limits<double>::infinity();
    const double sampen = (a > 0.0 && b > 0.0) ? -std::log(a / b) : inf;
    return {sampen, phi_m - phi_m1};
}

std::vector<std::span<const double>> entropy_windows(std::span<const double> s,
                                                     const EntropyOptions& opts) {
    if (s.size() < opts.min_length) {
        throw Error(ErrorCode::SeriesTooShort,
                    std::to_string(s.size()) + " samples, need " + std::to_string(opts.min_length));
    }
    std::vector<std::span<const double>> out;
    if (s.size() <= opts.window) {
        out.push_back(s);
        return out;
    }
    std::size_t pos = 0;
    while (pos + opts.window <= s.size()) {
        out.push_back(s.subspan(pos, opts.window));
        pos += opts.window;
    }
    if (s.size() - pos >= opts.min_tail) out.push_back(s.subspan(pos));
    return out;
}

}  // namespace

double sample_entropy_window(std::span<const double> series, int m, double r) {
    return entropy_counts(series, m, r).sampen;
}

double approximate_entropy_window(std::span<const double> series, int m, double r) {
    return entropy_counts(series, m, r).apen;
}

EntropyPair entropies(std::span<const double> series, const EntropyOptions& opts) {
    double samp_sum = 0.0, ap_sum = 0.0;
    int samp_n = 0, ap_n = 0;
    for (const auto w : entropy_windows(series, opts)) {
        const double sd = population_sd(w);
        if (!(sd > 0.0)) {
            ++samp_n;
            ++ap_n;
            continue;  // constant window contributes 0 to both
        }
        const auto c = entropy_counts(w, opts.m, opts.r_factor * sd);
        if (std::isfinite(c.sampen)) {
            samp_sum += c.sampen;
            ++samp_n;
        }
        ap_sum += c.apen;
        ++ap_n;
    }
    const double inf = std::numeric_limits<double>::infinity();
    return {samp_n ? samp_sum / samp_n : inf, ap_n ? ap_sum / ap_n : inf};
}

double sample_entropy(std::span<const double> series, const EntropyOptions& opts) {
    return entropies(series, opts).sampen;
}

double approximate_entropy(std::span<const double> series, const EntropyOptions& opts) {
    return entropies(series, opts).apen;
}

std::array<FeatureValue, kDispersionFeatureCount> dispersion_features(
    const GazeRecording& rec, std::span<const FixationInterval> fixations,
    const DispersionOptions& opts) {
    std::array<FeatureValue, kDispersionFeatureCount> out{};
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < rec.size(); ++i) {
        if (rec.gaze_present[i]) {
            xs.push_back(rec.x_deg[i]);
            ys.push_back(rec.y_deg[i]);
        }
    }
    if (xs.empty()) return out;
    out[0] = mean(xs);
    out[1] = mean(ys);

    try {
        const auto st = ellipse_stats(xs, ys);
        out[2] = st.sd_h_deg;
        out[3] = st.sd_v_deg;
        out[4] = st.rho;
        out[5] = st.bcea_minarc2;
        out[7] = st.gi;
        out[8] = st.mse_deg2;
    } catch (const Error&) {
    }

    std::vector<double> fx, fy;
    for (const auto& f : fixations) {
        for (std::size_t i = f.start_idx; i < f.end_idx && i < rec.size(); ++i) {
            if (rec.gaze_present[i]) {
                fx.push_back(rec.x_deg[i]);
                fy.push_back(rec.y_deg[i]);
            }
        }
    }
    try {
        out[6] = static_cast<double>(count_prls(fx, fy, opts.prl));
    } catch (const Error&) {
    }

    // A trace without any spread has no meaningful regularity; report missing.
    const auto finite = [](double v) -> FeatureValue {
        if (std::isfinite(v)) return v;
        return std::nullopt;
    };
    try {
        if (population_sd(xs) > 0.0) {
            const auto h = entropies(xs, opts.entropy);
            out[9] = finite(h.sampen);
            out[11] = finite(h.apen);
        }
        if (population_sd(ys) > 0.0) {
            const auto v = entropies(ys, opts.entropy);
            out[10] = finite(v.sampen);
            out[12] = finite(v.apen);
        }
    } catch (const Error&) {
    }
    return out;
}

}  // namespace oculo
