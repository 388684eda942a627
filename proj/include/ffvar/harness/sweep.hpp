#pragma once

// Sweeps over a list of field sizes q. A spec file names the experiment,
// its fixed parameters and the q list; every row is attempted and failures
// are recorded in the row instead of stopping the table.

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "ffvar/harness/commands.hpp"
#include "ffvar/harness/csv.hpp"

namespace ffvar::io {

struct SweepSpec {
  std::string experiment;  // var-si | var-ap | hl-jsum
  Json params = Json::object();
  std::vector<std::uint64_t> qs;
  std::string format = "json";
  std::optional<std::string> output;
};

inline SweepSpec parse_sweep_spec(const Json& j) {
  require(j.is_object(), "sweep spec must be a JSON object");
  SweepSpec s;
  try {
    s.experiment = j.at("experiment").get<std::string>();
    if (j.contains("params")) s.params = j.at("params");
    require(s.params.is_object(), "sweep params must be an object");
    s.qs = j.at("q").get<std::vector<std::uint64_t>>();
    s.format = j.value("format", std::string("json"));
    if (j.contains("output")) s.output = j.at("output").get<std::string>();
  } catch (const Json::exception& e) {
    throw ValidationError(std::string("bad sweep spec: ") + e.what());
  }
  require(s.experiment == "var-si" || s.experiment == "var-ap" || s.experiment == "hl-jsum",
          "sweep experiment must be var-si, var-ap or hl-jsum");
  require(s.format == "json" || s.format == "csv", "sweep format must be json or csv");
  return s;
}

inline SweepSpec load_sweep_spec(const std::string& path) {
  return parse_sweep_spec(read_json_file(path));
}

template <class T>
T param(const Json& p, const char* key) {
  if (!p.contains(key)) throw ValidationError(std::string("sweep params need ") + key);
  try {
    return p.at(key).get<T>();
  } catch (const Json::exception& e) {
    throw ValidationError(std::string("sweep param ") + key + ": " + e.what());
  }
}

/// Index of the smallest deviation among successful rows, and whether it is the last successful row.
inline Json deviation_summary(const std::vector<Json>& rows, const char* key) {
  std::optional<std::size_t> best, last;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i]["status"] != "ok") continue;
    last = i;
    if (!best || rows[i][key].get<double>() < rows[*best][key].get<double>()) best = i;
  }
  if (!best) return Json{{"argmin_q", nullptr}, {"min_deviation", nullptr}, {"minimum_at_largest_q", nullptr}};
  return Json{{"argmin_q", rows[*best]["q"]},
              {"min_deviation", rows[*best][key]},
              {"minimum_at_largest_q", *best == *last}};
}

inline Json run_sweep(const SweepSpec& s, const ExecConfig& cfg) {
  std::vector<Json> rows;
  Json table;
  table["experiment"] = s.experiment;
  table["params"] = s.params;
  table["q"] = s.qs;
  if (s.experiment == "var-si") {
    const int n = param<int>(s.params, "n"), h = param<int>(s.params, "h");
    const Method m = parse_method(s.params.value("method", std::string("characters")));
    auto sw = si_sweep(n, h, s.qs, m, cfg);
    table["prediction"] = n - h - 2;
    table["warning"] = sw.warning ? Json("h < n - 3 fails: outside the proven range") : Json(nullptr);
    for (const auto& r : sw.rows) {
      Json row{{"q", r.q}, {"status", r.report ? "ok" : "error"}, {"note", r.note}};
      if (r.report) {
        row["prediction"] = r.report->prediction;
        row["normalized_variance"] = r.report->normalized_variance;
        row["deviation"] = r.report->deviation;
        row["report"] = to_json(*r.report);
      }
      rows.push_back(std::move(row));
    }
    table["summary"] = deviation_summary(rows, "deviation");
  } else if (s.experiment == "var-ap") {
    const int n = param<int>(s.params, "n");
    const std::string tmpl = param<std::string>(s.params, "Q");
    const Method m = parse_method(s.params.value("method", std::string("characters")));
    for (const auto& r : g_sweep(n, tmpl, s.qs, m, cfg)) {
      const char* status = r.report ? "ok" : (r.note.rfind("skipped", 0) == 0 ? "skipped" : "error");
      Json row{{"q", r.q}, {"status", status}, {"note", r.report ? r.report->note : r.note}};
      if (r.report) {
        row["prediction"] = r.report->prediction_rmt;
        row["normalized_G"] = r.report->normalized_G;
        row["deviation"] = r.report->deviation_rmt;
        row["report"] = to_json(*r.report);
      }
      rows.push_back(std::move(row));
    }
    table["summary"] = deviation_summary(rows, "deviation");
  } else {
    const std::string tmpl = param<std::string>(s.params, "Q");
    const int j = param<int>(s.params, "j"), D = s.params.value("D", 6);
    for (auto q : s.qs) {
      Json row{{"q", q}, {"status", "ok"}, {"note", ""}};
      try {
        auto F = Field::of_order(q);
        Poly Q = instantiate_template(F, tmpl);
        const double direct = jsum_direct(Q, j, D, cfg.enum_cap);
        const double pred = hl_jsum_prediction(Q, j);
        row["jsum_direct"] = direct;
        row["jsum_series"] = q > 2 ? Json(jsum_series(Q, j, D)) : Json(nullptr);
        row["prediction"] = pred;
        row["scaled_gap"] = (direct - pred) / std::pow(static_cast<double>(q), j);
      } catch (const Error& e) {
        row["status"] = "error";
        row["note"] = e.what();
      }
      rows.push_back(std::move(row));
    }
  }
  table["rows"] = rows;
  return table;
}

/// CSV form of a sweep table: one line per row, the nested report flattened.
inline std::string sweep_csv(const Json& table) {
  std::vector<Json> rows;
  for (const auto& r : table.at("rows")) rows.push_back(r);
  return to_csv(rows, {"q", "status", "note"});
}

}  // namespace ffvar::io
