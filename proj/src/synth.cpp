#include "oculo/synth.h"

#include <algorithm>
#include <cmath>
#include <json.hpp>
#include <numbers>
#include <random>

#include "oculo/error.h"

namespace oculo {

namespace {

constexpr std::size_t kMaxAttempts = 1000;
constexpr std::size_t kEdgeMarginSamples = 10;
constexpr double kScreenMarginDeg = 5.0;

bool overlaps(const TrueInterval& a, const TrueInterval& b, std::size_t margin) {
    return a.start_idx < b.end_idx + margin && b.start_idx < a.end_idx + margin;
}

bool overlaps_any(const TrueInterval& iv, const std::vector<TrueInterval>& others, std::size_t margin) {
    return std::any_of(others.begin(), others.end(),
                       [&](const TrueInterval& o) { return overlaps(iv, o, margin); });
}

void require(bool ok, const char* what) {
    if (!ok) throw Error(ErrorCode::InvalidArgument, what);
}

}  // namespace

void SynthSpec::validate() const {
    geometry.validate();
    require(duration_s > 0.0 && fs_hz > 0.0, "duration and sampling rate must be positive");
    require(saccade_rate_hz >= 0.0 && blink_rate_per_min >= 0.0 && artifact_rate_per_min >= 0.0,
            "rates must be non-negative");
    require(amp_min_deg > 0.0 && amp_min_deg <= amp_max_deg && amp_max_deg <= 60.0,
            "amplitude support must lie in (0, 60]");
    require(main_seq_coef > 0.0 && main_seq_exp > 0.0 && vmax_dps > 0.0, "main sequence must be positive");
    require(min_saccade_ms >= 0.0 && (max_saccade_ms == 0.0 || max_saccade_ms >= min_saccade_ms),
            "invalid saccade duration clamp");
    require(min_fixation_ms > 0.0, "minimum fixation must be positive");
    require(fix_noise_sd_deg >= 0.0 && measurement_sd_deg >= 0.0 && drift_dps >= 0.0,
            "noise parameters must be non-negative");
    require(fix_noise_corr >= 0.0 && fix_noise_corr < 1.0, "jitter correlation must be in [0, 1)");
    require(blink_min_ms > 0.0 && blink_min_ms <= blink_max_ms, "invalid blink duration range");
    require(std::ceil(blink_min_ms * fs_hz / 1000.0 - 1e-9) <= std::floor(blink_max_ms * fs_hz / 1000.0 + 1e-9),
            "blink duration range holds no whole sample count");
    require(artifact_min_s > 0.0 && artifact_min_s <= artifact_max_s, "invalid artifact duration range");
    require(pupil_mm > 0.0 && pupil_noise_mm >= 0.0, "invalid pupil parameters");
    require(cluster_sd_deg >= 0.0, "cluster spread must be non-negative");
}

SynthOutput generate(const SynthSpec& spec) {
    spec.validate();
    std::mt19937_64 rng(spec.seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    const double fs = spec.fs_hz;
    const auto n = static_cast<std::size_t>(std::llround(spec.duration_s * fs));
    const double width = spec.geometry.width_px * spec.geometry.phi1();
    const double height = spec.geometry.height_px * spec.geometry.phi2();
    const auto inside = [&](double x, double y) {
        return x >= kScreenMarginDeg && x <= width - kScreenMarginDeg && y >= kScreenMarginDeg &&
               y <= height - kScreenMarginDeg;
    };

    SynthOutput out;
    auto& truth = out.truth;
    std::vector<double> bx(n), by(n);

    std::size_t cluster = 0;
    double px = width / 2.0, py = height / 2.0;
    if (!spec.clusters_deg.empty()) {
        px = spec.clusters_deg[0].first + spec.cluster_sd_deg * normal(rng);
        py = spec.clusters_deg[0].second + spec.cluster_sd_deg * normal(rng);
    }

    const auto saccade_duration_s = [&](double amp) {
        const double v = std::min(spec.vmax_dps, spec.main_seq_coef * std::pow(amp, spec.main_seq_exp));
        double d = amp * std::numbers::pi / (2.0 * v);
        if (spec.max_saccade_ms > 0.0) d = std::clamp(d, spec.min_saccade_ms / 1000.0, spec.max_saccade_ms / 1000.0);
        return d;
    };
    // Fixations are min_fix plus an exponential excess sized so that the mean
    // fixation + saccade cycle equals 1 / rate (when that is achievable).
    double mean_sacc_s = 0.0;
    for (int q = 0; q < 32; ++q) {
        mean_sacc_s += saccade_duration_s(spec.amp_min_deg + (spec.amp_max_deg - spec.amp_min_deg) * (q + 0.5) / 32.0);
    }
    mean_sacc_s /= 32.0;
    const auto min_fix = static_cast<std::size_t>(std::ceil(spec.min_fixation_ms * fs / 1000.0));
    const double excess_s = spec.saccade_rate_hz > 0.0
                                ? 1.0 / spec.saccade_rate_hz - static_cast<double>(min_fix) / fs - mean_sacc_s
                                : 0.0;
    std::exponential_distribution<double> gap_dist(excess_s > 1e-3 ? 1.0 / excess_s : 1e3);
    std::vector<TrueInterval> fixations;
    std::size_t cursor = 0;
    while (cursor < n) {
        // Fixation, optionally drifting.
        std::size_t fix_len = n - cursor;
        if (spec.saccade_rate_hz > 0.0) {
            fix_len = min_fix + static_cast<std::size_t>(std::llround(gap_dist(rng) * fs));
        }
        double dx = 0.0, dy = 0.0;
        if (spec.drift_dps > 0.0) {
            const double ang = 2.0 * std::numbers::pi * unit(rng);
            dx = spec.drift_dps * std::cos(ang) / fs;
            dy = spec.drift_dps * std::sin(ang) / fs;
        }
        const std::size_t fix_end = std::min(n, cursor + fix_len);
        for (std::size_t i = cursor; i < fix_end; ++i) {
            bx[i] = px;
            by[i] = py;
            if (inside(px + dx, py + dy)) {
                px += dx;
                py += dy;
            }
        }
        fixations.push_back({cursor, fix_end});
        cursor = fix_end;
        if (cursor >= n) break;

        // Saccade target.
        double tx = px, ty = py, amp = 0.0;
        bool placed = false;
        for (std::size_t attempt = 0; attempt < kMaxAttempts && !placed; ++attempt) {
            if (!spec.clusters_deg.empty()) {
                std::size_t next = cluster;
                if (spec.clusters_deg.size() > 1) {
                    next = static_cast<std::size_t>(unit(rng) * static_cast<double>(spec.clusters_deg.size() - 1));
                    next = std::min(next, spec.clusters_deg.size() - 2);
                    if (next >= cluster) ++next;
                }
                tx = spec.clusters_deg[next].first + spec.cluster_sd_deg * normal(rng);
                ty = spec.clusters_deg[next].second + spec.cluster_sd_deg * normal(rng);
                amp = std::hypot(tx - px, ty - py);
                placed = amp > 0.0 && amp <= 60.0;
                if (placed) cluster = next;
            } else {
                amp = spec.amp_min_deg + (spec.amp_max_deg - spec.amp_min_deg) * unit(rng);
                const double ang = 2.0 * std::numbers::pi * unit(rng);
                tx = px + amp * std::cos(ang);
                ty = py + amp * std::sin(ang);
                placed = inside(tx, ty);
            }
        }
        if (!placed) throw Error(ErrorCode::InfeasibleSpec, "no saccade target fits on the screen");

        double v = std::min(spec.vmax_dps, spec.main_seq_coef * std::pow(amp, spec.main_seq_exp));
        double dur_s = amp * std::numbers::pi / (2.0 * v);
        if (spec.max_saccade_ms > 0.0) {
            const double clamped = std::clamp(dur_s, spec.min_saccade_ms / 1000.0, spec.max_saccade_ms / 1000.0);
            if (clamped != dur_s) {
                dur_s = clamped;
                v = amp * std::numbers::pi / (2.0 * dur_s);
            }
        }
        const std::size_t onset = cursor;
        const auto steps = static_cast<std::size_t>(std::ceil(dur_s * fs - 1e-9));
        const std::size_t offset = onset + steps;
        for (std::size_t i = onset; i < std::min(n, offset); ++i) {
            const double tau = static_cast<double>(i - onset) / fs;
            const double frac = 0.5 * (1.0 - std::cos(std::numbers::pi * tau / dur_s));
            bx[i] = px + (tx - px) * frac;
            by[i] = py + (ty - py) * frac;
        }
        if (offset < n) {
            truth.saccades.push_back({onset, offset, static_cast<double>(onset) / fs, dur_s * 1000.0, amp, v});
        }
        px = tx;
        py = ty;
        cursor = std::min(n, offset);
    }

    // Tracking-loss gaps first, then blinks inside fixations away from them.
    std::poisson_distribution<int> artifact_count(spec.artifact_rate_per_min * spec.duration_s / 60.0);
    const int n_art = spec.artifact_rate_per_min > 0.0 ? artifact_count(rng) : 0;
    for (int a = 0; a < n_art; ++a) {
        bool ok = false;
        for (std::size_t attempt = 0; attempt < kMaxAttempts && !ok; ++attempt) {
            const double len_s = spec.artifact_min_s + (spec.artifact_max_s - spec.artifact_min_s) * unit(rng);
            const auto len = static_cast<std::size_t>(std::llround(len_s * fs));
            if (len + 2 * kEdgeMarginSamples >= n) break;
            const auto start = kEdgeMarginSamples +
                               static_cast<std::size_t>(unit(rng) * static_cast<double>(n - len - 2 * kEdgeMarginSamples));
            const TrueInterval iv{start, start + len};
            if (!overlaps_any(iv, truth.artifacts, kEdgeMarginSamples)) {
                truth.artifacts.push_back(iv);
                ok = true;
            }
        }
        if (!ok) throw Error(ErrorCode::InfeasibleSpec, "cannot place tracking-loss gaps without overlap");
    }

    std::poisson_distribution<int> blink_count(spec.blink_rate_per_min * spec.duration_s / 60.0);
    const int n_blinks = spec.blink_rate_per_min > 0.0 ? blink_count(rng) : 0;
    const auto min_len = static_cast<std::size_t>(std::ceil(spec.blink_min_ms * fs / 1000.0 - 1e-9));
    const auto max_len = static_cast<std::size_t>(std::floor(spec.blink_max_ms * fs / 1000.0 + 1e-9));
    for (int b = 0; b < n_blinks; ++b) {
        bool ok = false;
        for (std::size_t attempt = 0; attempt < kMaxAttempts && !ok; ++attempt) {
            const auto len = min_len + static_cast<std::size_t>(unit(rng) * static_cast<double>(max_len - min_len + 1));
            const auto& fix = fixations[static_cast<std::size_t>(unit(rng) * static_cast<double>(fixations.size()))];
            const std::size_t room = fix.end_idx - fix.start_idx;
            if (room < len + 2 * kEdgeMarginSamples) continue;
            const auto start = fix.start_idx + kEdgeMarginSamples +
                               static_cast<std::size_t>(unit(rng) * static_cast<double>(room - len - 2 * kEdgeMarginSamples + 1));
            const TrueInterval iv{start, std::min(start + len, fix.end_idx)};
            if (iv.end_idx - iv.start_idx != len || iv.start_idx == 0 || iv.end_idx >= n) continue;
            if (overlaps_any(iv, truth.blinks, kEdgeMarginSamples) ||
                overlaps_any(iv, truth.artifacts, kEdgeMarginSamples)) {
                continue;
            }
            truth.blinks.push_back(iv);
            ok = true;
        }
        if (!ok) throw Error(ErrorCode::InfeasibleSpec, "cannot place blinks without overlap");
    }
    const auto by_start = [](const TrueInterval& a, const TrueInterval& b) { return a.start_idx < b.start_idx; };
    std::sort(truth.blinks.begin(), truth.blinks.end(), by_start);
    std::sort(truth.artifacts.begin(), truth.artifacts.end(), by_start);

    // Saccades and fixations cut by a gap are not observable as such.
    std::erase_if(truth.saccades, [&](const TrueSaccade& s) {
        return overlaps_any({s.onset_idx, s.offset_idx}, truth.artifacts, kEdgeMarginSamples);
    });
    std::erase_if(fixations, [&](const TrueInterval& f) { return overlaps_any(f, truth.artifacts, 0); });
    truth.fixations = std::move(fixations);

    // Streams.
    auto& rec = out.recording;
    rec.subject_id = "synthetic";
    rec.condition = Condition::Baseline;
    rec.fs_hz = fs;
    rec.duration_s = static_cast<double>(n) / fs;
    rec.x_deg.assign(n, 0.0);
    rec.y_deg.assign(n, 0.0);
    rec.gaze_present.assign(n, 1);
    rec.pupil_left_mm.values.assign(n, 0.0);
    rec.pupil_left_mm.present.assign(n, 1);
    rec.pupil_right_mm.values.assign(n, 0.0);
    rec.pupil_right_mm.present.assign(n, 1);

    const double rho = spec.fix_noise_corr;
    const double innov = spec.fix_noise_sd_deg * std::sqrt(1.0 - rho * rho);
    double jx = spec.fix_noise_sd_deg * normal(rng), jy = spec.fix_noise_sd_deg * normal(rng);
    double pl = 0.0, pr = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (i > 0) {
            jx = rho * jx + innov * normal(rng);
            jy = rho * jy + innov * normal(rng);
        }
        const double x = bx[i] + jx + spec.measurement_sd_deg * normal(rng);
        const double y = by[i] + jy + spec.measurement_sd_deg * normal(rng);
        rec.x_deg[i] = std::clamp(x, 0.0, width);
        rec.y_deg[i] = std::clamp(y, 0.0, height);
        pl = 0.9 * pl + spec.pupil_noise_mm * std::sqrt(1.0 - 0.81) * normal(rng);
        pr = 0.9 * pr + spec.pupil_noise_mm * std::sqrt(1.0 - 0.81) * normal(rng);
        rec.pupil_left_mm.values[i] = std::clamp(spec.pupil_mm + pl, 0.5, 9.5);
        rec.pupil_right_mm.values[i] = std::clamp(spec.pupil_mm + 0.1 + pr, 0.5, 9.5);
    }
    const auto blank = [&](const TrueInterval& iv) {
        for (std::size_t i = iv.start_idx; i < iv.end_idx; ++i) {
            rec.gaze_present[i] = 0;
            rec.pupil_left_mm.present[i] = 0;
            rec.pupil_right_mm.present[i] = 0;
            rec.x_deg[i] = 0.0;
            rec.y_deg[i] = 0.0;
            rec.pupil_left_mm.values[i] = 0.0;
            rec.pupil_right_mm.values[i] = 0.0;
        }
    };
    for (const auto& iv : truth.blinks) blank(iv);
    for (const auto& iv : truth.artifacts) blank(iv);
    return out;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
    // splitmix64 finaliser applied to a running combination
    auto mix = [](std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    };
    return mix(mix(mix(seed) ^ a) ^ (b * 0x632be59bd9b4e019ULL));
}

CohortSpec default_cohort_spec(std::size_t n_subjects, std::uint64_t seed) {
    CohortSpec c;
    c.n_subjects = n_subjects;
    c.seed = seed;
    c.conditions[0].duration_s = 900.0;
    c.conditions[1].duration_s = 600.0;
    c.conditions[2].duration_s = 120.0;
    return c;
}

std::string subject_name(std::size_t index) {
    std::string digits = std::to_string(index + 1);
    if (digits.size() < 2) digits.insert(0, 1, '0');
    return "S" + digits;
}

SynthOutput generate_cohort_member(const CohortSpec& spec, std::size_t subject, Condition condition) {
    if (spec.n_subjects < 1) throw Error(ErrorCode::InvalidArgument, "cohort needs at least one subject");
    if (subject >= spec.n_subjects) throw Error(ErrorCode::OutOfRange, "subject index outside the cohort");

    std::mt19937_64 subject_rng(derive_seed(spec.seed, subject, 0));
    std::normal_distribution<double> normal(0.0, 1.0);
    double z[5];
    for (double& v : z) v = normal(subject_rng);

    const auto c = static_cast<std::size_t>(condition);
    SynthSpec s = spec.conditions[c];
    const auto& var = spec.variation;
    s.seed = derive_seed(spec.seed, subject, c + 1);
    s.saccade_rate_hz *= std::exp(var.saccade_rate * z[0]);
    const double amp_scale = std::exp(var.amplitude * z[1]);
    s.amp_max_deg = std::min(60.0, s.amp_max_deg * amp_scale);
    s.amp_min_deg = std::min(s.amp_max_deg, s.amp_min_deg * amp_scale);
    s.fix_noise_sd_deg *= std::exp(var.noise * z[2]);
    s.blink_rate_per_min *= std::exp(var.blink_rate * z[3]);
    s.pupil_mm = std::clamp(s.pupil_mm + var.pupil_mm_sd * z[4], 1.5, 8.0);

    auto out = generate(s);
    out.recording.subject_id = subject_name(subject);
    out.recording.condition = condition;
    return out;
}

std::vector<SynthOutput> generate_cohort(const CohortSpec& spec) {
    std::vector<SynthOutput> out;
    out.reserve(spec.n_subjects * kConditions.size());
    for (std::size_t s = 0; s < spec.n_subjects; ++s) {
        for (Condition c : kConditions) out.push_back(generate_cohort_member(spec, s, c));
    }
    if (out.empty()) throw Error(ErrorCode::InvalidArgument, "cohort needs at least one subject");
    return out;
}

std::string truth_to_json(const GroundTruth& truth, const SynthSpec& spec) {
    nlohmann::ordered_json j;
    j["seed"] = spec.seed;
    j["fs_hz"] = spec.fs_hz;
    j["duration_s"] = spec.duration_s;
    auto& sacc = j["saccades"] = nlohmann::ordered_json::array();
    for (const auto& s : truth.saccades) {
        sacc.push_back({{"onset_idx", s.onset_idx},
                        {"offset_idx", s.offset_idx},
                        {"onset_s", s.onset_s},
                        {"duration_ms", s.duration_ms},
                        {"amplitude_deg", s.amplitude_deg},
                        {"peak_velocity_dps", s.peak_velocity_dps}});
    }
    const auto intervals = [](const std::vector<TrueInterval>& v) {
        auto arr = nlohmann::ordered_json::array();
        for (const auto& iv : v) arr.push_back({{"start_idx", iv.start_idx}, {"end_idx", iv.end_idx}});
        return arr;
    };
    j["fixations"] = intervals(truth.fixations);
    j["blinks"] = intervals(truth.blinks);
    j["artifacts"] = intervals(truth.artifacts);
    return j.dump(2) + "\n";
}

}  // namespace oculo
