#include "oculo/kinematics.h"

#include <cmath>

#include "oculo/descriptive.h"
#include "oculo/error.h"

namespace oculo {

std::vector<double> VelocityTrace::estimation_pool() const {
    std::vector<double> pool;
    for (std::size_t i = 0; i < v_dps.size(); ++i) {
        if (plaus_mask[i]) pool.push_back(v_dps[i]);
    }
    return pool;
}

std::vector<double> angular_velocity(std::span<const double> x, std::span<const double> y,
                                     double fs_hz) {
    const std::size_t n = x.size();
    if (n < 3 || y.size() != n) {
        throw Error(ErrorCode::SegmentTooShort, "velocity needs a run of at least 3 samples");
    }
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) {
        double dx, dy;
        if (i == 0) {
            dx = (x[1] - x[0]) * fs_hz;
            dy = (y[1] - y[0]) * fs_hz;
        } else if (i == n - 1) {
            dx = (x[n - 1] - x[n - 2]) * fs_hz;
            dy = (y[n - 1] - y[n - 2]) * fs_hz;
        } else {
            dx = (x[i + 1] - x[i - 1]) * fs_hz / 2.0;
            dy = (y[i + 1] - y[i - 1]) * fs_hz / 2.0;
        }
        v[i] = std::hypot(dx, dy);
    }
    return v;
}

VelocityTrace velocity_trace(std::span<const double> x, std::span<const double> y,
                             std::span<const Segment> segments, double fs_hz) {
    VelocityTrace tr;
    const std::size_t n = x.size();
    tr.v_dps.assign(n, 0.0);
    tr.defined.assign(n, 0);
    tr.plaus_mask.assign(n, 0);

    std::vector<double> all;
    for (const auto& seg : segments) {
        if (seg.length() < 3) continue;
        auto v = angular_velocity(x.subspan(seg.start, seg.length()), y.subspan(seg.start, seg.length()),
                                  fs_hz);
        for (std::size_t k = 0; k < v.size(); ++k) {
            tr.v_dps[seg.start + k] = v[k];
            tr.defined[seg.start + k] = 1;
            all.push_back(v[k]);
        }
    }
    if (all.empty()) return tr;
    tr.median_dps = median(all);

    std::vector<std::uint8_t> scannable(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        if (!tr.defined[i]) continue;
        const double v = tr.v_dps[i];
        scannable[i] = v <= kMaxPlausibleVelocityDps ? 1 : 0;
        tr.plaus_mask[i] = (v <= kMaxPlausibleVelocityDps && !(v < tr.median_dps)) ? 1 : 0;
    }
    tr.scan_segments = segment(scannable);
    return tr;
}

VelocityTrace velocity_trace(const SmoothedGaze& gaze, double fs_hz) {
    return velocity_trace(gaze.x_deg, gaze.y_deg, gaze.segments, fs_hz);
}

}  // namespace oculo
