#pragma once

#include <json.hpp>

#include <ostream>

namespace greenwalk::cli {

using Json = nlohmann::ordered_json;

/// Deterministic serialization: doubles with 17 significant digits, numeric
/// arrays on one line, two-space indentation otherwise.
void write_json(std::ostream& out, const Json& value);

/// General formatting at 17 significant digits (%.17g); non-finite -> "nan"/"inf".
std::string format_number(double value);

}  // namespace greenwalk::cli
