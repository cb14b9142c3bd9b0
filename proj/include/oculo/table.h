#pragma once

// Feature table: CSV with header `subject_id,condition,<feature_names()...>`,
// one row per (subject, condition). Missing values are empty fields.

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "oculo/model.h"

namespace oculo {

/// Shortest decimal text that parses back to exactly the same double.
std::string format_number(double v);

void write_feature_table(std::ostream& out, std::span<const FeatureVector> rows);

/// Throws Error(MalformedTable) on a wrong header, field count, condition
/// name or numeric field.
std::vector<FeatureVector> read_feature_table(std::istream& in);

}  // namespace oculo
