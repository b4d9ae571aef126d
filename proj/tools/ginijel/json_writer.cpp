#include "json_writer.hpp"

#include <cmath>
#include <cstdio>

namespace ginijel::cli {
namespace {

void emit(const nlohmann::json& v, int indent, int depth, std::string& out) {
  const bool pretty = indent >= 0;
  auto newline = [&](int d) {
    if (!pretty) return;
    out += '\n';
    out.append(std::size_t(d * indent), ' ');
  };

  switch (v.type()) {
    case nlohmann::json::value_t::object: {
      if (v.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      bool first = true;
      for (auto it = v.begin(); it != v.end(); ++it) {
        if (!first) out += ',';
        first = false;
        newline(depth + 1);
        out += nlohmann::json(it.key()).dump();
        out += pretty ? ": " : ":";
        emit(it.value(), indent, depth + 1, out);
      }
      newline(depth);
      out += '}';
      return;
    }
    case nlohmann::json::value_t::array: {
      if (v.empty()) {
        out += "[]";
        return;
      }
      // Numeric arrays stay on one line.
      bool flat = true;
      for (const auto& e : v) flat = flat && (e.is_number() || e.is_null());
      out += '[';
      bool first = true;
      for (const auto& e : v) {
        if (!first) out += flat && pretty ? ", " : ",";
        first = false;
        if (!flat) newline(depth + 1);
        emit(e, indent, depth + 1, out);
      }
      if (!flat) newline(depth);
      out += ']';
      return;
    }
    case nlohmann::json::value_t::number_float: {
      const double d = v.get<double>();
      if (!std::isfinite(d)) {
        out += "null";
        return;
      }
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.17g", d);
      std::string s(buf);
      // Keep the value recognisably floating point.
      if (s.find_first_of(".eE") == std::string::npos) s += ".0";
      out += s;
      return;
    }
    default:
      out += v.dump();
  }
}

}  // namespace

std::string dump17(const nlohmann::json& value, int indent) {
  std::string out;
  emit(value, indent, 0, out);
  return out;
}

}  // namespace ginijel::cli
