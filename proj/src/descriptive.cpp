#include "oculo/descriptive.h"

#include <algorithm>
#include <cmath>
#include <vector>

#include "oculo/error.h"

namespace oculo {

double mean(std::span<const double> v) {
    if (v.empty()) throw Error(ErrorCode::InvalidArgument, "mean of empty sample");
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

namespace {

double sum_sq_dev(std::span<const double> v) {
    const double m = mean(v);
    double ss = 0.0;
    for (double x : v) ss += (x - m) * (x - m);
    return ss;
}

}  // namespace

double sample_sd(std::span<const double> v) {
    if (v.size() < 2) throw Error(ErrorCode::InvalidArgument, "sample sd needs two values");
    return std::sqrt(sum_sq_dev(v) / static_cast<double>(v.size() - 1));
}

double population_sd(std::span<const double> v) {
    return std::sqrt(sum_sq_dev(v) / static_cast<double>(v.size()));
}

double median(std::span<const double> v) {
    if (v.empty()) throw Error(ErrorCode::InvalidArgument, "median of empty sample");
    std::vector<double> s(v.begin(), v.end());
    std::sort(s.begin(), s.end());
    const std::size_t n = s.size();
    return n % 2 == 1 ? s[n / 2] : 0.5 * (s[n / 2 - 1] + s[n / 2]);
}

Summary summarize(std::span<const double> v) {
    Summary out;
    if (v.empty()) return out;
    out.mean = mean(v);
    out.median = median(v);
    if (v.size() >= 2) out.sd = sample_sd(v);
    return out;
}

}  // namespace oculo
