#include "oculo/preprocess.h"

#include <cmath>
#include <map>
#include <utility>

#include "oculo/error.h"

namespace oculo {

std::vector<Segment> segment(std::span<const std::uint8_t> present) {
    std::vector<Segment> out;
    std::size_t i = 0;
    const std::size_t n = present.size();
    while (i < n) {
        if (!present[i]) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < n && present[j]) ++j;
        out.push_back({i, j});
        i = j;
    }
    return out;
}

std::vector<Segment> segment(const GazeRecording& rec) { return segment(rec.gaze_present); }

std::vector<double> savgol_weights(int left, int right, int order) {
    const int terms = order + 1;
    if (left < 0 || right < 0 || left + right + 1 < terms) {
        throw Error(ErrorCode::InvalidWindow, "window too small for polynomial order");
    }
    // Offsets are scaled to [-1, 1] to keep the normal equations well conditioned.
    const double scale = static_cast<double>(std::max({left, right, 1}));
    std::vector<double> moments(2 * terms - 1, 0.0);
    for (int j = -left; j <= right; ++j) {
        const double u = j / scale;
        double p = 1.0;
        for (auto& m : moments) {
            m += p;
            p *= u;
        }
    }
    // Solve M z = e0 with M[r][c] = moments[r + c].
    std::vector<std::vector<double>> a(terms, std::vector<double>(terms + 1, 0.0));
    for (int r = 0; r < terms; ++r) {
        for (int c = 0; c < terms; ++c) a[r][c] = moments[r + c];
        a[r][terms] = r == 0 ? 1.0 : 0.0;
    }
    for (int col = 0; col < terms; ++col) {
        int piv = col;
        for (int r = col + 1; r < terms; ++r) {
            if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
        }
        std::swap(a[col], a[piv]);
        for (int r = 0; r < terms; ++r) {
            if (r == col) continue;
            const double f = a[r][col] / a[col][col];
            for (int c = col; c <= terms; ++c) a[r][c] -= f * a[col][c];
        }
    }
    std::vector<double> z(terms);
    for (int r = 0; r < terms; ++r) z[r] = a[r][terms] / a[r][r];

    std::vector<double> w;
    w.reserve(left + right + 1);
    for (int j = -left; j <= right; ++j) {
        const double u = j / scale;
        double p = 1.0, s = 0.0;
        for (int k = 0; k < terms; ++k) {
            s += z[k] * p;
            p *= u;
        }
        w.push_back(s);
    }
    return w;
}

std::vector<double> savgol_smooth(std::span<const double> data, int window, int order) {
    if (window % 2 == 0 || window <= order || order < 0) {
        throw Error(ErrorCode::InvalidWindow, "window must be odd and greater than the order");
    }
    const std::size_t n = data.size();
    std::vector<double> out(data.begin(), data.end());
    if (n < static_cast<std::size_t>(window)) return out;

    const int half = window / 2;
    std::map<std::pair<int, int>, std::vector<double>> cache;
    for (std::size_t i = 0; i < n; ++i) {
        const int left = static_cast<int>(std::min<std::size_t>(half, i));
        const int right = static_cast<int>(std::min<std::size_t>(half, n - 1 - i));
        auto it = cache.find({left, right});
        if (it == cache.end()) it = cache.emplace(std::pair{left, right}, savgol_weights(left, right, order)).first;
        const auto& w = it->second;
        double s = 0.0;
        for (int k = 0; k < left + right + 1; ++k) s += w[k] * data[i - left + k];
        out[i] = s;
    }
    return out;
}

SmoothedGaze smooth_gaze(const GazeRecording& rec, int window, int order) {
    SmoothedGaze g;
    g.segments = segment(rec);
    g.x_deg.assign(rec.size(), 0.0);
    g.y_deg.assign(rec.size(), 0.0);
    for (const auto& seg : g.segments) {
        const auto len = seg.length();
        auto sx = savgol_smooth(std::span(rec.x_deg).subspan(seg.start, len), window, order);
        auto sy = savgol_smooth(std::span(rec.y_deg).subspan(seg.start, len), window, order);
        std::copy(sx.begin(), sx.end(), g.x_deg.begin() + static_cast<std::ptrdiff_t>(seg.start));
        std::copy(sy.begin(), sy.end(), g.y_deg.begin() + static_cast<std::ptrdiff_t>(seg.start));
    }
    return g;
}

}  // namespace oculo
