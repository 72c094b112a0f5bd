#pragma once
// Minimal CSV reading/writing for the fixed file formats used here.
// Fields never contain commas or quotes; lines starting with '#' are
// self-description comments and are skipped on read.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <stdexcept>
#include <string>
#include <vector>

namespace liqnet::csv {

inline std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(',', start);
    if (pos == std::string::npos) {
      out.push_back(line.substr(start));
      break;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  return out;
}

struct Row {
  std::size_t line_no = 0;  // 1-based physical line in the file
  std::vector<std::string> fields;
};

// Reads all data rows. The first non-comment line must equal `header`.
inline std::vector<Row> read_rows(std::istream& in, const std::string& header,
                                  const std::string& what) {
  std::vector<Row> rows;
  std::string line;
  std::size_t line_no = 0;
  bool seen_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (!seen_header) {
      if (line != header) {
        throw std::runtime_error(what + ": expected header '" + header + "', got '" + line + "'");
      }
      seen_header = true;
      continue;
    }
    rows.push_back(Row{line_no, split(line)});
  }
  if (!seen_header) throw std::runtime_error(what + ": missing header row");
  return rows;
}

inline std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open input file: " + path);
  return in;
}

inline std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  return out;
}

// Shortest decimal digits that round-trip a double exactly.
inline std::string format_double(double v) {
  char buf[40];
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

inline double parse_double(const std::string& s, const std::string& what) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0') {
    throw std::runtime_error(what + ": bad number '" + s + "'");
  }
  return v;
}

inline long parse_long(const std::string& s, const std::string& what) {
  char* end = nullptr;
  const long v = std::strtol(s.c_str(), &end, 10);
  if (end == s.c_str() || *end != '\0') {
    throw std::runtime_error(what + ": bad integer '" + s + "'");
  }
  return v;
}

}  // namespace liqnet::csv
