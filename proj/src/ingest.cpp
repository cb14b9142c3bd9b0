#include "oculo/ingest.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "oculo/error.h"
#include "oculo/table.h"

namespace oculo {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split_commas(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t pos = 0;
    while (true) {
        const auto comma = line.find(',', pos);
        if (comma == std::string_view::npos) {
            out.push_back(trim(line.substr(pos)));
            break;
        }
        out.push_back(trim(line.substr(pos, comma - pos)));
        pos = comma + 1;
    }
    return out;
}

// Empty, NaN and non-finite fields are missing; anything else that fails to
// parse as a number is an error.
std::optional<double> parse_optional_number(std::string_view field, std::size_t row,
                                            std::string_view source) {
    if (field.empty()) return std::nullopt;
    double v = 0.0;
    const char* first = field.data();
    const char* last = field.data() + field.size();
    if (*first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last) {
        throw Error(ErrorCode::UnparseableNumeric,
                    std::string(source) + " row " + std::to_string(row) + ": '" +
                        std::string(field) + "'");
    }
    if (!std::isfinite(v)) return std::nullopt;
    return v;
}

bool equals_ignore_case(std::string_view a, std::string_view b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (std::tolower(static_cast<unsigned char>(a[i])) !=
            std::tolower(static_cast<unsigned char>(b[i])))
            return false;
    }
    return true;
}

}  // namespace

GazeRecording parse_recording(std::istream& in, const ScreenGeometry& geometry, double fs_hz,
                              std::string_view source) {
    geometry.validate();
    if (!(fs_hz > 0.0)) throw Error(ErrorCode::InvalidArgument, "fs_hz must be positive");

    std::string line;
    if (!std::getline(in, line)) {
        throw Error(ErrorCode::EmptyFile, std::string(source) + " is empty");
    }
    std::string_view header = line;
    if (header.starts_with("\xEF\xBB\xBF")) header.remove_prefix(3);
    header = trim(header);
    if (header != kRecordingHeader) {
        throw Error(ErrorCode::MalformedHeader,
                    std::string(source) + ": expected '" + std::string(kRecordingHeader) +
                        "', got '" + std::string(header) + "'");
    }

    std::vector<GazeSample> rows;
    std::size_t row_no = 1;
    while (std::getline(in, line)) {
        ++row_no;
        std::string_view sv = trim(line);
        if (sv.empty()) continue;
        const auto fields = split_commas(sv);
        if (fields.size() != 6) {
            throw Error(ErrorCode::UnparseableNumeric,
                        std::string(source) + " row " + std::to_string(row_no) + ": expected 6 fields");
        }
        GazeSample s;
        const auto t = parse_optional_number(fields[0], row_no, source);
        if (!t) {
            throw Error(ErrorCode::UnparseableNumeric,
                        std::string(source) + " row " + std::to_string(row_no) + ": missing timestamp");
        }
        s.t = *t;
        s.gaze_norm_x = parse_optional_number(fields[1], row_no, source);
        s.gaze_norm_y = parse_optional_number(fields[2], row_no, source);
        s.pupil_left_mm = parse_optional_number(fields[3], row_no, source);
        s.pupil_right_mm = parse_optional_number(fields[4], row_no, source);
        s.valid = equals_ignore_case(fields[5], "valid");
        if (!rows.empty() && s.t < rows.back().t) {
            throw Error(ErrorCode::NonMonotonicTimestamps,
                        std::string(source) + " row " + std::to_string(row_no));
        }
        rows.push_back(s);
    }
    if (rows.empty()) throw Error(ErrorCode::EmptyFile, std::string(source) + " has no data rows");

    const double t0 = rows.front().t;
    const auto bin_of = [&](double t) {
        return static_cast<std::size_t>(std::llround((t - t0) * fs_hz));
    };
    const std::size_t n = bin_of(rows.back().t) + 1;

    GazeRecording rec;
    rec.fs_hz = fs_hz;
    rec.x_deg.assign(n, 0.0);
    rec.y_deg.assign(n, 0.0);
    rec.gaze_present.assign(n, 0);
    rec.pupil_left_mm.values.assign(n, 0.0);
    rec.pupil_left_mm.present.assign(n, 0);
    rec.pupil_right_mm = rec.pupil_left_mm;
    rec.duration_s = static_cast<double>(n) / fs_hz;

    const auto in_unit = [](const std::optional<double>& v) { return v && *v >= 0.0 && *v <= 1.0; };
    const auto plausible_pupil = [](const std::optional<double>& v) {
        return v && *v > 0.0 && *v <= kMaxPupilMm;
    };

    for (const auto& s : rows) {
        const std::size_t b = bin_of(s.t);
        const bool gaze_ok = s.valid && in_unit(s.gaze_norm_x) && in_unit(s.gaze_norm_y);
        rec.gaze_present[b] = gaze_ok ? 1 : 0;
        rec.x_deg[b] = gaze_ok ? (*s.gaze_norm_x * geometry.width_px) * geometry.phi1() : 0.0;
        rec.y_deg[b] = gaze_ok ? (*s.gaze_norm_y * geometry.height_px) * geometry.phi2() : 0.0;

        const bool left_ok = s.valid && plausible_pupil(s.pupil_left_mm);
        rec.pupil_left_mm.present[b] = left_ok ? 1 : 0;
        rec.pupil_left_mm.values[b] = left_ok ? *s.pupil_left_mm : 0.0;
        const bool right_ok = s.valid && plausible_pupil(s.pupil_right_mm);
        rec.pupil_right_mm.present[b] = right_ok ? 1 : 0;
        rec.pupil_right_mm.values[b] = right_ok ? *s.pupil_right_mm : 0.0;
    }
    return rec;
}

GazeRecording parse_recording(const std::filesystem::path& path, const ScreenGeometry& geometry,
                              double fs_hz) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::EmptyFile, "cannot open " + path.string());
    GazeRecording rec = parse_recording(in, geometry, fs_hz, path.filename().string());
    const std::string stem = path.stem().string();
    if (auto parsed = parse_cohort_stem(stem)) {
        rec.subject_id = parsed->first;
        rec.condition = parsed->second;
    } else {
        rec.subject_id = stem;
    }
    return rec;
}

void write_recording_csv(std::ostream& out, const GazeRecording& rec, const ScreenGeometry& geometry) {
    out << kRecordingHeader << '\n';
    const double sx = geometry.width_px * geometry.phi1();
    const double sy = geometry.height_px * geometry.phi2();
    for (std::size_t i = 0; i < rec.size(); ++i) {
        const bool gaze = rec.gaze_present[i] != 0;
        out << format_number(static_cast<double>(i) / rec.fs_hz) << ',';
        if (gaze) out << format_number(rec.x_deg[i] / sx);
        out << ',';
        if (gaze) out << format_number(rec.y_deg[i] / sy);
        out << ',';
        if (rec.pupil_left_mm.has(i)) out << format_number(rec.pupil_left_mm.values[i]);
        out << ',';
        if (rec.pupil_right_mm.has(i)) out << format_number(rec.pupil_right_mm.values[i]);
        out << ',';
        const bool any = gaze || rec.pupil_left_mm.has(i) || rec.pupil_right_mm.has(i);
        out << (any ? "valid" : "invalid") << '\n';
    }
}

std::optional<std::pair<std::string, Condition>> parse_cohort_stem(std::string_view stem) {
    const auto us = stem.rfind('_');
    if (us == std::string_view::npos || us == 0) return std::nullopt;
    auto cond = parse_condition(stem.substr(us + 1));
    if (!cond) return std::nullopt;
    return std::make_pair(std::string(stem.substr(0, us)), *cond);
}

CohortListing validate_cohort(const std::filesystem::path& dir) {
    namespace fs = std::filesystem;
    std::error_code ec;
    if (!fs::is_directory(dir, ec)) {
        throw Error(ErrorCode::NoRecordingsFound, dir.string() + " is not a directory");
    }
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".csv") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());

    CohortListing listing;
    std::map<std::string, std::map<Condition, fs::path>> by_subject;
    for (const auto& p : files) {
        auto parsed = parse_cohort_stem(p.stem().string());
        if (!parsed) {
            listing.ignored.push_back(p);
            continue;
        }
        by_subject[parsed->first][parsed->second] = p;
    }
    if (by_subject.empty()) {
        throw Error(ErrorCode::NoRecordingsFound, "no <subject>_<condition>.csv files in " + dir.string());
    }
    for (const auto& [subject, conds] : by_subject) {
        if (conds.size() == kConditions.size()) {
            for (const auto& [c, p] : conds) listing.included.push_back({subject, c, p});
            continue;
        }
        CohortExclusion ex{subject, "incomplete conditions", {}};
        for (Condition c : kConditions) {
            if (!conds.contains(c)) ex.missing.push_back(c);
        }
        listing.excluded.push_back(std::move(ex));
    }
    return listing;
}

}  // namespace oculo
