#pragma once

#include <string>

#include "kneadlab/system.hpp"

namespace kneadlab {

/// Load a system description from a JSON file. See README for the schema:
/// a "branches" array whose entries carry a "domain" pair and either an
/// "affine" {slope, intercept} object or a "table" of [x, y] knot pairs,
/// all values as exact fraction/decimal strings; plus optional "name" and
/// "degenerate" fields. Malformed input throws std::invalid_argument with
/// the offending path in the message.
System load_system(const std::string& path);

/// Same, but parsing the JSON text directly (used by tests).
System parse_system(const std::string& json_text, const std::string& origin = "<inline>");

}  // namespace kneadlab
