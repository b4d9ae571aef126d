#include "csv.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <vector>

#include <ginijel/error.hpp>

namespace ginijel::cli {
namespace {

struct Field {
  std::string text;
  std::size_t column;  // 1-based character column where the field starts
};

std::string where(const std::string& source, std::size_t line, std::size_t column) {
  return source + ":" + std::to_string(line) + ":" + std::to_string(column);
}

std::vector<Field> split(const std::string& line, char delim, const std::string& source,
                         std::size_t line_no) {
  std::vector<Field> out;
  std::size_t i = 0;
  while (true) {
    Field f{{}, i + 1};
    if (i < line.size() && line[i] == '"') {
      ++i;
      bool closed = false;
      while (i < line.size()) {
        if (line[i] == '"') {
          if (i + 1 < line.size() && line[i + 1] == '"') {
            f.text += '"';
            i += 2;
            continue;
          }
          closed = true;
          ++i;
          break;
        }
        f.text += line[i++];
      }
      if (!closed) {
        throw InputError(where(source, line_no, f.column) + ": unterminated quoted field");
      }
      if (i < line.size() && line[i] != delim) {
        throw InputError(where(source, line_no, i + 1) +
                         ": unexpected character after closing quote");
      }
    } else {
      while (i < line.size() && line[i] != delim) f.text += line[i++];
    }
    out.push_back(std::move(f));
    if (i >= line.size()) break;
    ++i;  // delimiter
  }
  return out;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

}  // namespace

Dataset parse_dataset(std::istream& in, const CsvSchema& schema, const std::string& source) {
  std::string line;
  std::size_t line_no = 0;

  auto next_line = [&]() -> bool {
    if (!std::getline(in, line)) return false;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return true;
  };

  if (!next_line()) throw InputError(source + ": empty file, header row required");
  if (line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
  const auto header = split(line, schema.delimiter, source, line_no);

  std::size_t xi = header.size(), yi = header.size();
  for (std::size_t c = 0; c < header.size(); ++c) {
    const auto name = trim(header[c].text);
    if (name == schema.x_col && xi == header.size()) xi = c;
    if (name == schema.y_col && yi == header.size()) yi = c;
  }
  if (xi == header.size()) {
    throw InputError(where(source, 1, 1) + ": column '" + schema.x_col + "' not found in header");
  }
  if (yi == header.size()) {
    throw InputError(where(source, 1, 1) + ": column '" + schema.y_col + "' not found in header");
  }

  std::vector<Record> records;
  while (next_line()) {
    if (trim(line).empty()) continue;
    const auto fields = split(line, schema.delimiter, source, line_no);
    if (fields.size() != header.size()) {
      throw InputError(where(source, line_no, 1) + ": expected " +
                       std::to_string(header.size()) + " fields, found " +
                       std::to_string(fields.size()));
    }
    const auto& xf = fields[xi];
    const std::string text = trim(xf.text);
    if (text.empty()) {
      throw InputError(where(source, line_no, xf.column) + ": missing value in column '" +
                       schema.x_col + "'");
    }
    double value = 0.0;
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || end != text.data() + text.size()) {
      throw InputError(where(source, line_no, xf.column) + ": cannot parse '" + text +
                       "' as a number in column '" + schema.x_col + "'");
    }
    if (!std::isfinite(value)) {
      throw InputError(where(source, line_no, xf.column) + ": non-finite value '" + text +
                       "' in column '" + schema.x_col + "'");
    }
    records.push_back({value, fields[yi].text});
  }
  if (records.empty()) throw InputError(source + ": no data rows after the header");
  return Dataset::from_pairs(records);
}

Dataset read_dataset(const std::string& path, const CsvSchema& schema) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path + ": cannot open file");
  return parse_dataset(in, schema, path);
}

void write_dataset(std::ostream& out, const Dataset& d, const CsvSchema& schema) {
  auto quote = [&](const std::string& s) {
    if (s.find_first_of(std::string("\"\r\n") + schema.delimiter) == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
      if (c == '"') q += '"';
      q += c;
    }
    return q + "\"";
  };
  out << quote(schema.x_col) << schema.delimiter << quote(schema.y_col) << '\n';
  char buf[32];
  for (std::size_t i = 0; i < d.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g", d.x()[i]);
    out << buf << schema.delimiter << quote(d.label(d.y()[i])) << '\n';
  }
}

}  // namespace ginijel::cli
