#include "json_out.hpp"

#include <charconv>
#include <cmath>
#include <string>

namespace greenwalk::cli {

namespace {

bool is_flat(const Json& v) {
  for (const auto& e : v) {
    if (e.is_array() || e.is_object()) return false;
  }
  return true;
}

void write_scalar(std::ostream& out, const Json& v) {
  if (v.is_number_float()) {
    const double x = v.get<double>();
    out << (std::isfinite(x) ? format_number(x) : std::string("null"));
  } else {
    out << v.dump();
  }
}

void write(std::ostream& out, const Json& v, int depth) {
  const std::string pad(static_cast<std::size_t>(2 * (depth + 1)), ' ');
  const std::string close(static_cast<std::size_t>(2 * depth), ' ');
  if (v.is_object()) {
    if (v.empty()) {
      out << "{}";
      return;
    }
    out << "{\n";
    bool first = true;
    for (auto it = v.begin(); it != v.end(); ++it) {
      if (!first) out << ",\n";
      first = false;
      out << pad << Json(it.key()).dump() << ": ";
      write(out, it.value(), depth + 1);
    }
    out << "\n" << close << "}";
  } else if (v.is_array()) {
    if (is_flat(v)) {
      out << "[";
      bool first = true;
      for (const auto& e : v) {
        if (!first) out << ", ";
        first = false;
        write_scalar(out, e);
      }
      out << "]";
      return;
    }
    out << "[\n";
    bool first = true;
    for (const auto& e : v) {
      if (!first) out << ",\n";
      first = false;
      out << pad;
      write(out, e, depth + 1);
    }
    out << "\n" << close << "]";
  } else {
    write_scalar(out, v);
  }
}

}  // namespace

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (value == 0.0) value = 0.0;  // drop the sign of -0
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

void write_json(std::ostream& out, const Json& value) {
  write(out, value, 0);
  out << "\n";
}

}  // namespace greenwalk::cli
