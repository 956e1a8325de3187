#pragma once

// Tabular report output: CSV with 17 significant digits, or a JSON array of
// objects with the same field names.

#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "lsieve/report.hpp"

namespace lsieve {

using Cell = std::variant<std::string, double, long long, bool>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add(std::vector<Cell> row) {
    if (row.size() != columns.size()) throw std::logic_error("table row has the wrong number of cells");
    rows.push_back(std::move(row));
  }
};

enum class Format { csv, json };

inline std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string cell_text(const Cell& c) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::string>) {
          return v;
        } else if constexpr (std::is_same_v<T, double>) {
          return format_double(v);
        } else if constexpr (std::is_same_v<T, bool>) {
          return v ? "true" : "false";
        } else {
          return std::to_string(v);
        }
      },
      c);
}

inline std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

inline void write_csv(std::ostream& os, const Table& t) {
  for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << csv_escape(t.columns[i]);
  os << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_escape(cell_text(row[i]));
    os << '\n';
  }
}

inline nlohmann::ordered_json cell_json(const Cell& c) {
  return std::visit(
      [](const auto& v) -> nlohmann::ordered_json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, double>) {
          if (!std::isfinite(v)) return format_double(v);
        }
        return v;
      },
      c);
}

inline void write_json(std::ostream& os, const Table& t) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& row : t.rows) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < row.size(); ++i) obj[t.columns[i]] = cell_json(row[i]);
    arr.push_back(std::move(obj));
  }
  os << arr.dump(2) << '\n';
}

inline void write_table(std::ostream& os, const Table& t, Format f) {
  if (f == Format::csv) {
    write_csv(os, t);
  } else {
    write_json(os, t);
  }
}

/// "key=value;..." over parameters then notes, skipping `skip`.
inline std::string join_params(const InequalityReport& r, const std::vector<std::string>& skip = {}) {
  std::string out;
  auto emit = [&](const std::string& k, const std::string& v) {
    for (const auto& s : skip) {
      if (s == k) return;
    }
    if (!out.empty()) out += ';';
    out += k + "=" + v;
  };
  for (const auto& [k, v] : r.parameters) emit(k, format_double(v));
  for (const auto& [k, v] : r.notes) emit(k, v);
  return out;
}

inline const std::vector<std::string>& verify_columns() {
  static const std::vector<std::string> c{"inequality", "M",   "N",   "Q",     "extra_params",
                                          "seed",       "lhs", "rhs", "ratio", "pass"};
  return c;
}

inline const std::vector<std::string>& constants_columns() {
  static const std::vector<std::string> c{"name", "value", "reference", "error", "bound", "pass"};
  return c;
}

inline const std::vector<std::string>& scan_columns() {
  static const std::vector<std::string> c{"scan", "point", "parameters", "lhs", "rhs", "ratio", "pass"};
  return c;
}

inline double param_or(const InequalityReport& r, const std::string& k, double fallback) {
  const auto it = r.parameters.find(k);
  return it == r.parameters.end() ? fallback : it->second;
}

inline std::vector<Cell> verify_row(const InequalityReport& r, long long seed) {
  return {std::string(name(r.id)),
          std::llround(param_or(r, "M", 0.0)),
          std::llround(param_or(r, "N", 0.0)),
          std::llround(param_or(r, "Q", 0.0)),
          join_params(r, {"M", "N", "Q"}),
          seed,
          r.lhs,
          r.rhs,
          r.ratio,
          r.pass};
}

inline std::vector<Cell> scan_row(const std::string& scan, const std::string& point, const InequalityReport& r) {
  return {scan, point, join_params(r), r.lhs, r.rhs, r.ratio, r.pass};
}

}  // namespace lsieve
