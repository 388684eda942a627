#pragma once

// Flat CSV rendering of JSON records: nested objects become dotted column
// names, arrays are kept as compact JSON text in one cell.

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "ffvar/harness/json_io.hpp"

namespace ffvar::io {

using FlatRow = std::vector<std::pair<std::string, std::string>>;

inline std::string cell_text(const Json& v) {
  if (v.is_null()) return "";
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  return v.dump();
}

inline void flatten_into(const Json& v, const std::string& prefix, FlatRow& out) {
  if (v.is_object() && !v.empty()) {
    for (auto it = v.begin(); it != v.end(); ++it) {
      flatten_into(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
    }
    return;
  }
  out.emplace_back(prefix.empty() ? "value" : prefix, cell_text(v));
}

inline FlatRow flatten(const Json& v) {
  FlatRow r;
  flatten_into(v, "", r);
  return r;
}

inline std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string o = "\"";
  for (char c : s) {
    if (c == '"') o += '"';
    o += c;
  }
  return o + "\"";
}

/// Columns are `leading` followed by the remaining flattened keys in first-seen order.
inline std::string to_csv(const std::vector<Json>& rows, std::vector<std::string> leading = {}) {
  std::vector<FlatRow> flat;
  std::vector<std::string> cols = std::move(leading);
  for (const auto& r : rows) {
    flat.push_back(flatten(r));
    for (const auto& [k, _] : flat.back()) {
      if (std::find(cols.begin(), cols.end(), k) == cols.end()) cols.push_back(k);
    }
  }
  std::string out;
  for (std::size_t i = 0; i < cols.size(); ++i) out += (i ? "," : "") + csv_quote(cols[i]);
  out += "\n";
  for (const auto& fr : flat) {
    for (std::size_t i = 0; i < cols.size(); ++i) {
      std::string v;
      for (const auto& [k, x] : fr) {
        if (k == cols[i]) {
          v = x;
          break;
        }
      }
      out += (i ? "," : "") + csv_quote(v);
    }
    out += "\n";
  }
  return out;
}

}  // namespace ffvar::io
