#pragma once

// JSON rendering of a statistics report. Key order is fixed so the output
// is byte-stable for a given report.

#include <string>

#include "oculo/stats.h"

namespace oculo {

/// Document layout:
///   cohort    { n_subjects, subjects, incomplete_subjects, alpha }
///   features  [ { name, unit, skipped?, normality, parametric, omnibus, post_hoc } ]
///   post_hoc  [ { Parameter, Condition, "p-value", Effect, "Effect Size", Interpretation } ]
std::string report_to_json(const stats::StatReport& report);

}  // namespace oculo
