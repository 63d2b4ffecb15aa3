#pragma once

#include <string_view>

#include <json.hpp>

namespace loopbu {

// Reads the TOML subset used by functional spec files into a JSON value:
// [table] and [[array-of-tables]] headers with bare keys, key = value pairs,
// basic and literal strings, integers, floats (including inf/nan), booleans,
// arrays (multi-line, nested, trailing comma) and inline tables. Dotted keys,
// dates and multi-line strings are rejected. Errors carry the line number.
nlohmann::json parse_toml(std::string_view text);

}  // namespace loopbu
