#include <CLI11.hpp>
#include <iostream>

#include "oculo/cli.h"
#include "oculo/error.h"

namespace {

oculo::ScreenGeometry make_geometry(const std::string& screen, const std::string& fov) {
    const auto [w, h] = oculo::cli::parse_dims(screen);
    const auto [hf, vf] = oculo::cli::parse_dims(fov);
    oculo::ScreenGeometry g;
    g.width_px = static_cast<int>(w);
    g.height_px = static_cast<int>(h);
    g.horiz_fov_deg = hf;
    g.vert_fov_deg = vf;
    g.validate();
    return g;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Oculomotor feature extraction and condition statistics"};
    app.require_subcommand(1);

    std::string input, out, screen = "1920x1080", fov = "95x63", d_bands, preset = "null";
    double fs = 100.0, prl_mass = 0.68, alpha = 0.05;
    unsigned jobs = oculo::cli::default_jobs();
    std::uint64_t seed = 1;
    std::size_t subjects = 24;
    std::vector<double> durations{900.0, 600.0, 120.0};

    auto* extract = app.add_subcommand("extract", "Extract the feature table from a cohort directory");
    extract->add_option("--input", input, "Directory of <subject>_<condition>.csv recordings")->required();
    extract->add_option("--out", out, "Feature table path ('-' for stdout)")->required();
    extract->add_option("--fs", fs, "Sampling rate in Hz")->capture_default_str();
    extract->add_option("--screen", screen, "Screen resolution WxH in pixels")->capture_default_str();
    extract->add_option("--fov", fov, "Field of view HxV in degrees")->capture_default_str();
    extract->add_option("--prl-mass", prl_mass, "Density mass enclosed by the PRL contour")->capture_default_str();
    extract->add_option("--jobs", jobs, "Worker threads")->capture_default_str();

    auto* stats = app.add_subcommand("stats", "Compare conditions from a feature table");
    stats->add_option("--input", input, "Feature table")->required();
    stats->add_option("--out", out, "Report path ('-' for stdout)")->required();
    stats->add_option("--d-bands", d_bands, "Cohen's d label bounds, five increasing values");
    stats->add_option("--alpha", alpha, "Significance level")->capture_default_str();

    auto* synth = app.add_subcommand("synth", "Generate a synthetic cohort with ground truth");
    synth->add_option("--out", out, "Output directory")->required();
    synth->add_option("--subjects", subjects, "Number of subjects")->capture_default_str();
    synth->add_option("--durations", durations, "Baseline, Ride and Fog durations in seconds")
        ->expected(3)
        ->capture_default_str();
    synth->add_option("--seed", seed, "Random seed")->capture_default_str();
    synth->add_option("--preset", preset, "null, fog-blinks or fog-saccades")->capture_default_str();
    synth->add_option("--fs", fs, "Sampling rate in Hz")->capture_default_str();
    synth->add_option("--screen", screen, "Screen resolution WxH in pixels")->capture_default_str();
    synth->add_option("--fov", fov, "Field of view HxV in degrees")->capture_default_str();
    synth->add_option("--jobs", jobs, "Worker threads")->capture_default_str();

    auto* plot = app.add_subcommand("plot-data", "Write one long-format file per feature");
    plot->add_option("--input", input, "Feature table")->required();
    plot->add_option("--out", out, "Output directory")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*extract) {
            oculo::cli::ExtractCommand cmd;
            cmd.input = input;
            cmd.out = out;
            cmd.options.geometry = make_geometry(screen, fov);
            cmd.options.fs_hz = fs;
            cmd.options.dispersion.prl.mass = prl_mass;
            cmd.jobs = jobs;
            return oculo::cli::run_extract(cmd, std::cerr);
        }
        if (*stats) {
            oculo::cli::StatsCommand cmd;
            cmd.input = input;
            cmd.out = out;
            cmd.options.alpha = alpha;
            if (!d_bands.empty()) cmd.options.cohen_bands = oculo::stats::CohenBands::parse(d_bands);
            return oculo::cli::run_stats(cmd, std::cerr);
        }
        if (*synth) {
            oculo::cli::SynthCommand cmd;
            cmd.out = out;
            cmd.subjects = subjects;
            std::copy(durations.begin(), durations.end(), cmd.durations_s);
            cmd.seed = seed;
            cmd.preset = preset;
            cmd.geometry = make_geometry(screen, fov);
            cmd.fs_hz = fs;
            cmd.jobs = jobs;
            return oculo::cli::run_synth(cmd, std::cerr);
        }
        oculo::cli::PlotDataCommand cmd;
        cmd.input = input;
        cmd.out = out;
        return oculo::cli::run_plot_data(cmd, std::cerr);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return oculo::cli::kExitFatal;
    }
}
