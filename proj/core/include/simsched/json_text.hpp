#pragma once

#include <string>

#include <nlohmann/json.hpp>

namespace simsched {

using ordered_json = nlohmann::ordered_json;

/// Formats a double with 17 significant digits; +inf becomes the string "inf".
std::string format_number(double v);

/// Compact JSON with insertion-ordered keys and every floating-point number at
/// 17 significant digits, so equal inputs give byte-identical text.
std::string dump_json(const ordered_json& j);

/// Same as dump_json but one item per line, indented by two spaces per level.
std::string dump_json_pretty(const ordered_json& j);

/// JSON value for a number that may be +inf.
ordered_json number_or_inf(double v);

}  // namespace simsched
