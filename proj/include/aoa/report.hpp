#pragma once

// Tabular sweep output as CSV or JSON.
//
// CSV: `# key: value` metadata lines, then a header row, then one row per
// record. Numbers use the shortest round-trip representation; an infinite
// bound is written as `inf`. JSON carries the same content with `inf` as a
// string.

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "aoa/scenario.hpp"

namespace aoa {

inline constexpr const char* kToolName = "aoa";
inline constexpr const char* kToolVersion = "0.1.0";

struct Table {
  std::vector<std::pair<std::string, std::string>> metadata;
  std::vector<std::string> warnings;
  std::vector<std::pair<std::string, std::string>> config;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

enum class OutputFormat { csv, json };

inline std::string render_csv(const Table& t) {
  std::string out;
  for (const auto& [k, v] : t.metadata) out += "# " + k + ": " + v + "\n";
  for (const auto& w : t.warnings) out += "# warning: " + w + "\n";
  for (const auto& [k, v] : t.config) out += "# config: " + k + " = " + v + "\n";
  for (std::size_t i = 0; i < t.columns.size(); ++i) {
    if (i) out += ',';
    out += t.columns[i];
  }
  out += '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += format_double(row[i]);
    }
    out += '\n';
  }
  return out;
}

namespace detail {
inline nlohmann::ordered_json json_number(double v) {
  if (!std::isfinite(v)) return format_double(v);
  return v;
}

inline nlohmann::ordered_json json_header(const Table& t) {
  nlohmann::ordered_json meta = nlohmann::ordered_json::object();
  for (const auto& [k, v] : t.metadata) meta[k] = v;
  meta["warnings"] = t.warnings;
  nlohmann::ordered_json cfg = nlohmann::ordered_json::object();
  for (const auto& [k, v] : t.config) cfg[k] = v;
  meta["config"] = std::move(cfg);
  return meta;
}
}  // namespace detail

inline std::string render_json(const Table& t) {
  nlohmann::ordered_json j;
  j["metadata"] = detail::json_header(t);
  j["columns"] = t.columns;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& row : t.rows) {
    nlohmann::ordered_json r = nlohmann::ordered_json::array();
    for (double v : row) r.push_back(detail::json_number(v));
    rows.push_back(std::move(r));
  }
  j["rows"] = std::move(rows);
  return j.dump(2) + "\n";
}

/// JSON with one object per row keyed by column name, under `key`.
inline std::string render_json_records(const Table& t, const std::string& key) {
  nlohmann::ordered_json j;
  j["metadata"] = detail::json_header(t);
  nlohmann::ordered_json records = nlohmann::ordered_json::array();
  for (const auto& row : t.rows) {
    nlohmann::ordered_json r = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < row.size() && i < t.columns.size(); ++i) {
      r[t.columns[i]] = detail::json_number(row[i]);
    }
    records.push_back(std::move(r));
  }
  j[key] = std::move(records);
  return j.dump(2) + "\n";
}

inline std::string render(const Table& t, OutputFormat f) {
  return f == OutputFormat::csv ? render_csv(t) : render_json(t);
}

}  // namespace aoa
