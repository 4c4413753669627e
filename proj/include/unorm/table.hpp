#pragma once

#include <Eigen/Dense>
#include <cstdio>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace unorm {

using Cell = std::variant<std::string, double, long long, bool>;

inline std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline std::string format_cell(const Cell& c) {
  if (auto s = std::get_if<std::string>(&c)) return *s;
  if (auto d = std::get_if<double>(&c)) return format_double(*d);
  if (auto i = std::get_if<long long>(&c)) return std::to_string(*i);
  return std::get<bool>(c) ? "true" : "false";
}

struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  bool pass = true;

  void add(std::vector<Cell> row) { rows.push_back(std::move(row)); }

  std::string to_csv() const {
    std::string out;
    for (size_t i = 0; i < columns.size(); ++i) out += (i ? "," : "") + columns[i];
    out += '\n';
    for (const auto& r : rows) {
      for (size_t i = 0; i < r.size(); ++i) {
        std::string s = format_cell(r[i]);
        if (s.find_first_of(",\"\n") != std::string::npos) {
          std::string q = "\"";
          for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
          s = q + "\"";
        }
        out += (i ? "," : "") + s;
      }
      out += '\n';
    }
    return out;
  }
};

// Vector as "a;b;c" so it fits a single CSV field.
template <class V>
std::string join_vec(const V& v) {
  std::string s;
  for (Eigen::Index i = 0; i < v.size(); ++i) s += (i ? ";" : "") + format_double(v[i]);
  return s;
}

}  // namespace unorm
