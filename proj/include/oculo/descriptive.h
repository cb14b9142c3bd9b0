#pragma once

#include <optional>
#include <span>

namespace oculo {

double mean(std::span<const double> v);
/// Sample standard deviation (n - 1 denominator).
double sample_sd(std::span<const double> v);
/// Population standard deviation (n denominator).
double population_sd(std::span<const double> v);
double median(std::span<const double> v);

/// mean / sd / median of a list of event measurements. Everything is empty
/// for an empty list; sd is also empty with fewer than two values.
struct Summary {
    std::optional<double> mean;
    std::optional<double> sd;
    std::optional<double> median;
};

Summary summarize(std::span<const double> v);

}  // namespace oculo
