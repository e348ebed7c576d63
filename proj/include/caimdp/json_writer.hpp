#pragma once

#include "json.hpp"

#include <iosfwd>
#include <string>

namespace caimdp {

/// Serializes JSON with every floating-point number printed to 17
/// significant digits. Arrays holding only scalars stay on one line.
/// Non-finite numbers are written as null.
void write_json(std::ostream& out, const nlohmann::json& value, int indent = 2);
std::string dump_json(const nlohmann::json& value, int indent = 2);

std::string format_double(double x);

}  // namespace caimdp
