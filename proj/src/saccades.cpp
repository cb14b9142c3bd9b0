#include "oculo/saccades.h"

#include <algorithm>
#include <cassert>
#include <cmath>

#include "oculo/descriptive.h"
#include "oculo/error.h"

namespace oculo {

ThresholdState iterate_threshold(std::span<const double> pool, double multiplier,
                                 const ThresholdOptions& opts) {
    std::vector<double> sorted(pool.begin(), pool.end());
    std::sort(sorted.begin(), sorted.end());

    ThresholdState st;
    st.n_multiplier = multiplier;
    double at = opts.init_dps;
    for (int it = 1; it <= opts.max_iterations; ++it) {
        const auto cut = std::lower_bound(sorted.begin(), sorted.end(), at);
        const std::span<const double> sub(sorted.data(), static_cast<std::size_t>(cut - sorted.begin()));
        if (sub.size() < 2) {
            throw Error(ErrorCode::DegenerateVelocity, "fewer than two samples below the threshold");
        }
        const double mu = mean(sub);
        const double sd = sample_sd(sub);
        if (!(sd > 0.0)) throw Error(ErrorCode::DegenerateVelocity, "sub-threshold velocities are constant");
        const double next = mu + multiplier * sd;
        st.theta_pT = next;
        st.mu = mu;
        st.sigma = sd;
        st.iterations = it;
        if (std::abs(next - at) < opts.tolerance_dps) {
            st.converged = true;
            return st;
        }
        at = next;
    }
    return st;
}

ThresholdState iterate_threshold(const VelocityTrace& vel, double multiplier,
                                 const ThresholdOptions& opts) {
    const auto pool = vel.estimation_pool();
    if (pool.size() < opts.min_samples) {
        throw Error(ErrorCode::TooFewSamples,
                    std::to_string(pool.size()) + " estimation samples, need " +
                        std::to_string(opts.min_samples));
    }
    return iterate_threshold(pool, multiplier, opts);
}

namespace {

// Nearest local minimum at or before `from`, within `bound` samples, never
// looking outside [lo, hi).
std::size_t local_min_backward(std::span<const double> v, std::size_t from, std::size_t lo,
                               std::size_t hi, std::size_t bound) {
    for (std::size_t q = from; q > lo && from - q <= bound; --q) {
        if (q + 1 >= hi) continue;
        if (v[q] <= v[q - 1] && v[q] <= v[q + 1]) return q;
    }
    return from;
}

std::size_t local_min_forward(std::span<const double> v, std::size_t from, std::size_t lo,
                              std::size_t hi, std::size_t bound) {
    for (std::size_t q = from; q + 1 < hi && q - from <= bound; ++q) {
        if (q <= lo) continue;
        if (v[q] <= v[q - 1] && v[q] <= v[q + 1]) return q;
    }
    return from;
}

}  // namespace

DetectionResult detect_saccades(const SmoothedGaze& gaze, const VelocityTrace& vel,
                                const ThresholdState& threshold, double fs_hz,
                                const DetectionOptions& opts) {
    DetectionResult res;
    res.threshold = threshold;
    const std::span<const double> v = vel.v_dps;
    const double peak_th = threshold.theta_pT;
    const double onset_th = threshold.onset_threshold();
    const auto search = static_cast<std::size_t>(std::lround(opts.local_min_search_ms * fs_hz / 1000.0));
    const auto noise_n = static_cast<std::size_t>(std::lround(opts.local_noise_window_ms * fs_hz / 1000.0));

    std::vector<SaccadeEvent> cands;
    for (const auto& seg : vel.scan_segments) {
        const std::size_t s = seg.start, e = seg.end;
        std::size_t i = s;
        while (i < e) {
            if (v[i] < peak_th) {
                ++i;
                continue;
            }
            const std::size_t run_start = i;
            while (i < e && v[i] >= peak_th) ++i;
            const std::size_t peak = static_cast<std::size_t>(
                std::max_element(v.begin() + static_cast<std::ptrdiff_t>(run_start),
                                 v.begin() + static_cast<std::ptrdiff_t>(i)) -
                v.begin());

            std::size_t on = peak;
            while (on > s && v[on] >= onset_th) --on;
            if (v[on] >= onset_th) continue;  // ran into the segment start
            on = local_min_backward(v, on, s, e, search);

            double local_noise = onset_th;
            if (noise_n >= 2 && on >= s + noise_n) {
                const auto pre = v.subspan(on - noise_n, noise_n);
                local_noise = mean(pre) + 3.0 * sample_sd(pre);
            }
            const double offset_th = 0.7 * onset_th + 0.3 * local_noise;
            assert(local_noise > onset_th || offset_th <= onset_th);

            std::size_t off = peak;
            while (off + 1 < e && v[off] >= offset_th) ++off;
            if (v[off] >= offset_th) continue;  // ran into the segment end
            off = local_min_forward(v, off, s, e, search);

            cands.push_back({on, peak, off, 0.0, 0.0, 0.0});
        }
    }

    std::sort(cands.begin(), cands.end(),
              [](const SaccadeEvent& a, const SaccadeEvent& b) { return a.onset_idx < b.onset_idx; });
    std::vector<SaccadeEvent> merged;
    for (const auto& c : cands) {
        if (!merged.empty() && c.onset_idx < merged.back().offset_idx) {
            auto& m = merged.back();
            m.offset_idx = std::max(m.offset_idx, c.offset_idx);
            if (v[c.peak_idx] > v[m.peak_idx]) m.peak_idx = c.peak_idx;
            continue;
        }
        merged.push_back(c);
    }
    for (auto& m : merged) {
        m.duration_ms = static_cast<double>(m.offset_idx - m.onset_idx) * 1000.0 / fs_hz;
        m.amplitude_deg = std::hypot(gaze.x_deg[m.offset_idx] - gaze.x_deg[m.onset_idx],
                                     gaze.y_deg[m.offset_idx] - gaze.y_deg[m.onset_idx]);
        m.peak_velocity_dps = v[m.peak_idx];
    }
    res.saccades = std::move(merged);
    return res;
}

bool is_misdetection(const SaccadeEvent& s, const DetectionOptions& opts) {
    return s.duration_ms < opts.min_saccade_ms || s.duration_ms > opts.max_saccade_ms;
}

MultiplierSearch optimize_multiplier(const SmoothedGaze& gaze, const VelocityTrace& vel,
                                     double fs_hz, const DetectionOptions& opts,
                                     const ThresholdOptions& threshold_opts) {
    MultiplierSearch out;
    bool have = false;
    int best = 0;
    for (std::size_t k = 0; k < kMultiplierGrid.size(); ++k) {
        const double n = kMultiplierGrid[k];
        const auto th = iterate_threshold(vel, n, threshold_opts);
        auto res = detect_saccades(gaze, vel, th, fs_hz, opts);
        const int mis = static_cast<int>(std::count_if(
            res.saccades.begin(), res.saccades.end(),
            [&](const SaccadeEvent& s) { return is_misdetection(s, opts); }));
        out.scores[k] = {n, static_cast<int>(res.saccades.size()), mis};
        if (!have || mis < best) {
            have = true;
            best = mis;
            res.misdetections = mis;
            out.result = std::move(res);
            out.multiplier = n;
        }
    }
    auto& sacc = out.result.saccades;
    sacc.erase(std::remove_if(sacc.begin(), sacc.end(),
                              [&](const SaccadeEvent& s) { return is_misdetection(s, opts); }),
               sacc.end());
    return out;
}

std::vector<FixationInterval> extract_fixations(std::span<const SaccadeEvent> saccades,
                                                std::span<const Segment> segments,
                                                std::span<const std::uint8_t> blink_mask,
                                                double fs_hz, const DetectionOptions& opts) {
    const std::size_t n = blink_mask.size();
    std::vector<std::uint8_t> usable(n, 0);
    for (const auto& seg : segments) {
        for (std::size_t i = seg.start; i < std::min(seg.end, n); ++i) usable[i] = blink_mask[i] ? 0 : 1;
    }

    std::vector<FixationInterval> out;
    const auto emit = [&](std::size_t a, std::size_t b) {
        const double ms = static_cast<double>(b - a) * 1000.0 / fs_hz;
        if (b > a && ms >= opts.min_fixation_ms) out.push_back({a, b, ms});
    };
    for (std::size_t k = 0; k + 1 < saccades.size(); ++k) {
        const std::size_t a = saccades[k].offset_idx;
        const std::size_t b = std::min(saccades[k + 1].onset_idx, n);
        std::size_t i = a;
        while (i < b) {
            if (!usable[i]) {
                ++i;
                continue;
            }
            std::size_t j = i;
            while (j < b && usable[j]) ++j;
            emit(i, j);
            i = j;
        }
    }
    return out;
}

std::array<FeatureValue, kSaccadeFeatureCount> saccade_features(
    std::span<const SaccadeEvent> saccades, std::span<const FixationInterval> fixations) {
    std::vector<double> amp, vel, dur, fix;
    for (const auto& s : saccades) {
        amp.push_back(s.amplitude_deg);
        vel.push_back(s.peak_velocity_dps);
        dur.push_back(s.duration_ms);
    }
    for (const auto& f : fixations) fix.push_back(f.duration_ms);

    std::array<FeatureValue, kSaccadeFeatureCount> out{};
    std::size_t k = 0;
    for (const auto* list : {&amp, &vel, &dur, &fix}) {
        const auto s = summarize(*list);
        out[k++] = s.mean;
        out[k++] = s.sd;
        out[k++] = s.median;
    }
    out[k] = static_cast<double>(saccades.size());
    return out;
}

}  // namespace oculo
