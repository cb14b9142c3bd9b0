#pragma once

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "oculo/model.h"

namespace testutil {

// Recording with every stream present; gaze given in degrees.
inline oculo::GazeRecording make_recording(std::vector<double> x, std::vector<double> y, double fs = 100.0) {
    oculo::GazeRecording r;
    r.subject_id = "T";
    r.fs_hz = fs;
    const std::size_t n = x.size();
    r.x_deg = std::move(x);
    r.y_deg = std::move(y);
    r.gaze_present.assign(n, 1);
    r.pupil_left_mm.values.assign(n, 3.0);
    r.pupil_left_mm.present.assign(n, 1);
    r.pupil_right_mm = r.pupil_left_mm;
    r.duration_s = static_cast<double>(n) / fs;
    return r;
}

inline std::vector<double> normal_draws(std::size_t n, std::uint64_t seed, double mu = 0.0, double sd = 1.0) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> d(mu, sd);
    std::vector<double> v(n);
    for (auto& x : v) x = d(rng);
    return v;
}

// Fresh empty directory under the system temp dir.
inline std::filesystem::path temp_dir(const std::string& name) {
    auto p = std::filesystem::temp_directory_path() / ("oculo_test_" + name);
    std::filesystem::remove_all(p);
    std::filesystem::create_directories(p);
    return p;
}

}  // namespace testutil
