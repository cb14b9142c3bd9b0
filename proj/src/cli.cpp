#include "oculo/cli.h"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>

#include "oculo/error.h"
#include "oculo/ingest.h"
#include "oculo/report.h"
#include "oculo/synth.h"
#include "oculo/table.h"

namespace oculo::cli {

namespace fs = std::filesystem;

namespace {

// Runs task(i) for i in [0, n) on up to `jobs` threads.
void parallel_for(std::size_t n, unsigned jobs, const std::function<void(std::size_t)>& task) {
    const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(std::max(1u, jobs), n));
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) task(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < n; i = next++) task(i);
        });
    }
    for (auto& t : pool) t.join();
}

void write_text(const fs::path& path, const std::string& text) {
    if (path == "-") {
        std::cout << text;
        std::cout.flush();
        return;
    }
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write " + path.string());
    out << text;
    if (!out) throw Error(ErrorCode::InvalidArgument, "write failed for " + path.string());
}

std::vector<FeatureVector> load_table(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::MalformedTable, "cannot open " + path.string());
    return read_feature_table(in);
}

std::string join_conditions(const std::vector<Condition>& cs) {
    std::string s;
    for (Condition c : cs) {
        if (!s.empty()) s += ", ";
        s += to_string(c);
    }
    return s;
}

}  // namespace

std::pair<double, double> parse_dims(std::string_view text) {
    const auto x = text.find_first_of("xX");
    if (x == std::string_view::npos) throw Error(ErrorCode::InvalidArgument, "expected WxH, got '" + std::string(text) + "'");
    const auto parse = [&](std::string_view s) {
        double v = 0.0;
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc() || ptr != s.data() + s.size() || !(v > 0.0)) {
            throw Error(ErrorCode::InvalidArgument, "expected WxH, got '" + std::string(text) + "'");
        }
        return v;
    };
    return {parse(text.substr(0, x)), parse(text.substr(x + 1))};
}

unsigned default_jobs() { return std::max(1u, std::thread::hardware_concurrency()); }

int run_extract(const ExtractCommand& cmd, std::ostream& log) {
    cmd.options.geometry.validate();
    const auto listing = validate_cohort(cmd.input);
    for (const auto& ex : listing.excluded) {
        log << "excluded subject " << ex.subject_id << ": " << ex.reason << " (missing "
            << join_conditions(ex.missing) << ")\n";
    }
    for (const auto& p : listing.ignored) log << "ignored file " << p.filename().string() << ": name is not <subject>_<condition>.csv\n";

    const auto& entries = listing.included;
    std::vector<std::optional<FeatureVector>> rows(entries.size());
    std::vector<std::string> errors(entries.size());
    parallel_for(entries.size(), cmd.jobs, [&](std::size_t i) {
        try {
            auto fv = extract_features(entries[i].path, cmd.options);
            fv.subject_id = entries[i].subject_id;
            fv.condition = entries[i].condition;
            rows[i] = std::move(fv);
        } catch (const std::exception& e) {
            errors[i] = e.what();
        }
    });

    std::vector<FeatureVector> ok;
    std::size_t failed = 0;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        if (rows[i]) {
            ok.push_back(std::move(*rows[i]));
        } else {
            ++failed;
            log << "failed " << entries[i].path.filename().string() << ": " << errors[i] << "\n";
        }
    }
    if (ok.empty()) {
        log << "error: no recording could be processed\n";
        return kExitFatal;
    }
    std::ostringstream table;
    write_feature_table(table, ok);
    write_text(cmd.out, table.str());
    log << "extracted " << ok.size() << " of " << entries.size() << " recordings\n";
    return failed == 0 ? kExitOk : kExitPartial;
}

int run_stats(const StatsCommand& cmd, std::ostream& log) {
    const auto rows = load_table(cmd.input);
    const auto report = stats::run_report(rows, cmd.options);
    for (const auto& s : report.incomplete_subjects) log << "excluded subject " << s << ": incomplete conditions\n";
    for (const auto& f : report.features) {
        if (!f.skipped.empty()) log << "feature " << f.name << " not tested: " << f.skipped << "\n";
    }
    write_text(cmd.out, report_to_json(report));
    log << "tested " << report.n_subjects << " subjects, " << report.significant_rows().size()
        << " significant post-hoc comparisons\n";
    return kExitOk;
}

int run_synth(const SynthCommand& cmd, std::ostream& log) {
    CohortSpec spec = default_cohort_spec(cmd.subjects, cmd.seed);
    for (std::size_t c = 0; c < 3; ++c) {
        spec.conditions[c].duration_s = cmd.durations_s[c];
        spec.conditions[c].fs_hz = cmd.fs_hz;
        spec.conditions[c].geometry = cmd.geometry;
    }
    auto& fog = spec.conditions[static_cast<std::size_t>(Condition::Fog)];
    if (cmd.preset == "fog-blinks") {
        fog.blink_rate_per_min *= 2.5;
    } else if (cmd.preset == "fog-saccades") {
        fog.saccade_rate_hz *= 2.0;
    } else if (cmd.preset != "null") {
        throw Error(ErrorCode::InvalidArgument, "unknown preset '" + cmd.preset + "'");
    }
    for (const auto& s : spec.conditions) s.validate();
    if (cmd.subjects < 1) throw Error(ErrorCode::InvalidArgument, "need at least one subject");

    fs::create_directories(cmd.out);
    const std::size_t total = cmd.subjects * kConditions.size();
    std::vector<std::string> errors(total);
    parallel_for(total, cmd.jobs, [&](std::size_t i) {
        const std::size_t subject = i / kConditions.size();
        const Condition cond = kConditions[i % kConditions.size()];
        try {
            const auto out = generate_cohort_member(spec, subject, cond);
            std::string cond_name(to_string(cond));
            std::transform(cond_name.begin(), cond_name.end(), cond_name.begin(),
                           [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
            const std::string stem = out.recording.subject_id + "_" + cond_name;
            std::ostringstream csv;
            write_recording_csv(csv, out.recording, cmd.geometry);
            write_text(cmd.out / (stem + ".csv"), csv.str());
            SynthSpec used = spec.conditions[static_cast<std::size_t>(cond)];
            used.seed = derive_seed(spec.seed, subject, static_cast<std::size_t>(cond) + 1);
            write_text(cmd.out / (stem + ".truth.json"), truth_to_json(out.truth, used));
        } catch (const std::exception& e) {
            errors[i] = e.what();
        }
    });
    std::size_t failed = 0;
    for (std::size_t i = 0; i < total; ++i) {
        if (!errors[i].empty()) {
            ++failed;
            log << "failed " << subject_name(i / 3) << " " << to_string(kConditions[i % 3]) << ": " << errors[i] << "\n";
        }
    }
    if (failed == total) return kExitFatal;
    log << "wrote " << (total - failed) << " recordings to " << cmd.out.string() << "\n";
    return failed == 0 ? kExitOk : kExitPartial;
}

int run_plot_data(const PlotDataCommand& cmd, std::ostream& log) {
    const auto rows = load_table(cmd.input);
    fs::create_directories(cmd.out);
    for (std::size_t f = 0; f < kFeatureCount; ++f) {
        std::string text = "subject,condition,value\n";
        for (const auto& r : rows) {
            if (!r.values[f]) continue;
            text += r.subject_id;
            text += ',';
            text += to_string(r.condition);
            text += ',';
            text += format_number(*r.values[f]);
            text += '\n';
        }
        write_text(cmd.out / (std::string(feature_names()[f].name) + ".csv"), text);
    }
    log << "wrote " << kFeatureCount << " files to " << cmd.out.string() << "\n";
    return kExitOk;
}

}  // namespace oculo::cli
