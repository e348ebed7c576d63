#include "caimdp/json_writer.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace caimdp {

std::string format_double(double x) {
  if (!std::isfinite(x)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  std::string s(buf);
  // Keep integral doubles recognizably floating point.
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

namespace {

bool is_scalar_array(const nlohmann::json& j) {
  for (const auto& e : j) {
    if (e.is_structured()) return false;
  }
  return true;
}

void write_scalar(std::ostream& out, const nlohmann::json& j) {
  if (j.is_number_float()) {
    out << format_double(j.get<double>());
  } else {
    out << j.dump();
  }
}

void write(std::ostream& out, const nlohmann::json& j, int indent, int depth) {
  const std::string pad(static_cast<std::size_t>(indent * (depth + 1)), ' ');
  const std::string close_pad(static_cast<std::size_t>(indent * depth), ' ');
  if (j.is_object()) {
    if (j.empty()) {
      out << "{}";
      return;
    }
    out << "{\n";
    bool first = true;
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (!first) out << ",\n";
      first = false;
      out << pad << nlohmann::json(it.key()).dump() << ": ";
      write(out, it.value(), indent, depth + 1);
    }
    out << "\n" << close_pad << "}";
  } else if (j.is_array()) {
    if (j.empty()) {
      out << "[]";
      return;
    }
    if (is_scalar_array(j)) {
      out << "[";
      bool first = true;
      for (const auto& e : j) {
        if (!first) out << ", ";
        first = false;
        write_scalar(out, e);
      }
      out << "]";
      return;
    }
    out << "[\n";
    bool first = true;
    for (const auto& e : j) {
      if (!first) out << ",\n";
      first = false;
      out << pad;
      write(out, e, indent, depth + 1);
    }
    out << "\n" << close_pad << "]";
  } else {
    write_scalar(out, j);
  }
}

}  // namespace

void write_json(std::ostream& out, const nlohmann::json& value, int indent) {
  write(out, value, indent, 0);
  out << "\n";
}

std::string dump_json(const nlohmann::json& value, int indent) {
  std::ostringstream out;
  write_json(out, value, indent);
  return out.str();
}

}  // namespace caimdp
