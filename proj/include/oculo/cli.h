#pragma once

// Subcommand implementations behind the `oculo` executable. Each returns a
// process exit code: 0 ok, 1 fatal, 2 partial (some inputs failed).

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <utility>

#include "oculo/pipeline.h"
#include "oculo/stats.h"

namespace oculo::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFatal = 1;
inline constexpr int kExitPartial = 2;

/// "1920x1080" -> (1920, 1080). Throws InvalidArgument.
std::pair<double, double> parse_dims(std::string_view text);

unsigned default_jobs();

struct ExtractCommand {
    std::filesystem::path input;
    std::filesystem::path out;  // "-" writes to stdout
    ExtractOptions options;
    unsigned jobs = 1;
};

int run_extract(const ExtractCommand& cmd, std::ostream& log);

struct StatsCommand {
    std::filesystem::path input;
    std::filesystem::path out;  // "-" writes to stdout
    stats::ReportOptions options;
};

int run_stats(const StatsCommand& cmd, std::ostream& log);

struct SynthCommand {
    std::filesystem::path out;  // directory
    std::size_t subjects = 24;
    double durations_s[3] = {900.0, 600.0, 120.0};
    std::uint64_t seed = 1;
    std::string preset = "null";  // null | fog-blinks | fog-saccades
    ScreenGeometry geometry;
    double fs_hz = 100.0;
    unsigned jobs = 1;
};

int run_synth(const SynthCommand& cmd, std::ostream& log);

struct PlotDataCommand {
    std::filesystem::path input;
    std::filesystem::path out;  // directory
};

int run_plot_data(const PlotDataCommand& cmd, std::ostream& log);

}  // namespace oculo::cli
