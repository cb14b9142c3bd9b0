#include "oculo/table.h"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>

#include "oculo/error.h"

namespace oculo {

std::string format_number(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    if (ec != std::errc()) throw Error(ErrorCode::InvalidArgument, "unformattable number");
    return std::string(buf, ptr);
}

namespace {

std::string header_line() {
    std::string h = "subject_id,condition";
    for (const auto& f : feature_names()) {
        h += ',';
        h += f.name;
    }
    return h;
}

std::vector<std::string_view> split(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t pos = 0;
    while (true) {
        auto comma = line.find(',', pos);
        if (comma == std::string_view::npos) {
            out.push_back(line.substr(pos));
            return out;
        }
        out.push_back(line.substr(pos, comma - pos));
        pos = comma + 1;
    }
}

}  // namespace

void write_feature_table(std::ostream& out, std::span<const FeatureVector> rows) {
    out << header_line() << '\n';
    for (const auto& row : rows) {
        out << row.subject_id << ',' << to_string(row.condition);
        for (const auto& v : row.values) {
            out << ',';
            if (v && std::isfinite(*v)) out << format_number(*v);
        }
        out << '\n';
    }
}

std::vector<FeatureVector> read_feature_table(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw Error(ErrorCode::MalformedTable, "empty feature table");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != header_line()) throw Error(ErrorCode::MalformedTable, "unexpected header");

    std::vector<FeatureVector> rows;
    std::size_t row_no = 1;
    while (std::getline(in, line)) {
        ++row_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto fields = split(line);
        if (fields.size() != kFeatureCount + 2) {
            throw Error(ErrorCode::MalformedTable, "row " + std::to_string(row_no) + ": field count");
        }
        FeatureVector fv;
        fv.subject_id = std::string(fields[0]);
        auto cond = parse_condition(fields[1]);
        if (fv.subject_id.empty() || !cond) {
            throw Error(ErrorCode::MalformedTable, "row " + std::to_string(row_no) + ": bad key");
        }
        fv.condition = *cond;
        for (std::size_t i = 0; i < kFeatureCount; ++i) {
            const auto f = fields[i + 2];
            if (f.empty()) continue;
            double v = 0.0;
            auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
            if (ec != std::errc() || ptr != f.data() + f.size()) {
                throw Error(ErrorCode::MalformedTable,
                            "row " + std::to_string(row_no) + ": '" + std::string(f) + "'");
            }
            fv.values[i] = v;
        }
        rows.push_back(std::move(fv));
    }
    return rows;
}

}  // namespace oculo
