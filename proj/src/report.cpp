#include "oculo/report.h"

#include <cmath>
#include <json.hpp>

namespace oculo {

namespace {

using json = nlohmann::ordered_json;

json number(double v) {
    if (std::isfinite(v)) return v;
    if (std::isnan(v)) return nullptr;
    return v > 0 ? "inf" : "-inf";
}

std::string pair_label(const stats::PairwiseResult& p) {
    return std::string(to_string(p.pair.first)) + " vs " + std::string(to_string(p.pair.second));
}

json pairwise_json(const stats::PairwiseResult& p) {
    json j;
    j["pair"] = pair_label(p);
    j["test"] = std::string(to_string(p.test));
    j["statistic"] = number(p.statistic);
    j["p_raw"] = number(p.p_raw);
    j["p_adj"] = number(p.p_adj);
    j["effect"] = std::string(to_string(p.effect));
    j["effect_value"] = number(p.effect_value);
    j["label"] = std::string(to_string(p.label));
    return j;
}

}  // namespace

std::string report_to_json(const stats::StatReport& report) {
    json doc;
    auto& cohort = doc["cohort"];
    cohort["n_subjects"] = report.n_subjects;
    cohort["subjects"] = report.subjects;
    cohort["incomplete_subjects"] = report.incomplete_subjects;
    cohort["alpha"] = report.alpha;

    auto& features = doc["features"] = json::array();
    for (const auto& f : report.features) {
        json fj;
        fj["name"] = f.name;
        fj["unit"] = f.unit;
        if (!f.skipped.empty()) {
            fj["skipped"] = f.skipped;
            features.push_back(std::move(fj));
            continue;
        }
        json norm;
        for (const auto& nc : f.normality) {
            json c;
            if (nc.result) {
                c["w"] = number(nc.result->w);
                c["p"] = number(nc.result->p);
            } else {
                c["w"] = nullptr;
                c["p"] = nullptr;
            }
            c["normal"] = nc.normal;
            norm[std::string(to_string(nc.condition))] = std::move(c);
        }
        fj["normality"] = std::move(norm);
        fj["parametric"] = f.parametric;
        if (f.omnibus) {
            json o;
            o["test"] = std::string(to_string(f.omnibus->test));
            o["statistic"] = number(f.omnibus->statistic);
            o["df1"] = f.omnibus->df1;
            o["df2"] = f.omnibus->df2;
            o["p_raw"] = number(f.omnibus->p);
            o["p_adj"] = number(f.omnibus_p_adj);
            o["exact"] = f.omnibus->exact;
            fj["omnibus"] = std::move(o);
        }
        auto& ph = fj["post_hoc"] = json::array();
        for (const auto& p : f.pairwise) ph.push_back(pairwise_json(p));
        features.push_back(std::move(fj));
    }

    auto& table = doc["post_hoc"] = json::array();
    for (const auto& p : report.significant_rows()) {
        json row;
        row["Parameter"] = p.feature;
        row["Condition"] = pair_label(p);
        row["p-value"] = number(p.p_adj);
        row["Effect"] = std::string(to_string(p.effect));
        row["Effect Size"] = number(p.effect_value);
        row["Interpretation"] = std::string(to_string(p.label));
        table.push_back(std::move(row));
    }
    return doc.dump(2) + "\n";
}

}  // namespace oculo
