#include "gtcorr/report.h"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "gtcorr/errors.h"

namespace gtcorr {
namespace {

using nlohmann::json;

std::string quantile_label(double q) { return Metric::quantile(q).label(); }

std::string format_scalar(const json& v) {
  if (v.is_number_float()) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v.get<double>());
    return buf;
  }
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "-";
  return v.dump();
}

bool is_flat_object(const json& v) {
  if (!v.is_object()) return false;
  return std::all_of(v.begin(), v.end(), [](const json& x) { return !x.is_structured(); });
}

bool is_table(const json& v) {
  return v.is_array() && !v.empty() &&
         std::all_of(v.begin(), v.end(), [](const json& x) { return is_flat_object(x); });
}

void render_table(std::ostringstream& out, const std::string& title, const json& rows) {
  std::vector<std::string> columns;
  for (const json& row : rows) {
    for (auto it = row.begin(); it != row.end(); ++it) {
      if (std::find(columns.begin(), columns.end(), it.key()) == columns.end()) {
        columns.push_back(it.key());
      }
    }
  }
  std::vector<std::size_t> width(columns.size());
  std::vector<std::vector<std::string>> cells;
  for (std::size_t c = 0; c < columns.size(); ++c) width[c] = columns[c].size();
  for (const json& row : rows) {
    std::vector<std::string> line;
    for (std::size_t c = 0; c < columns.size(); ++c) {
      line.push_back(row.contains(columns[c]) ? format_scalar(row[columns[c]]) : "-");
      width[c] = std::max(width[c], line.back().size());
    }
    cells.push_back(std::move(line));
  }
  out << title << '\n';
  auto emit = [&](const std::vector<std::string>& line) {
    out << "  ";
    for (std::size_t c = 0; c < line.size(); ++c) {
      out << line[c] << std::string(width[c] - line[c].size() + 2, ' ');
    }
    out << '\n';
  };
  emit(columns);
  for (const auto& line : cells) emit(line);
}

void render_value(std::ostringstream& out, const std::string& key, const json& v) {
  if (is_table(v)) {
    render_table(out, key, v);
  } else if (v.is_object()) {
    for (auto it = v.begin(); it != v.end(); ++it) {
      render_value(out, key.empty() ? it.key() : key + "." + it.key(), it.value());
    }
  } else if (v.is_array()) {
    for (std::size_t i = 0; i < v.size(); ++i) {
      render_value(out, key + "[" + std::to_string(i) + "]", v[i]);
    }
  } else {
    out << key << "  " << format_scalar(v) << '\n';
  }
}

}  // namespace

json ReportDocument::to_json() const {
  return json{{"schema", kReportSchemaVersion},
              {"command", command},
              {"inputs", inputs},
              {"results", results},
              {"warnings", warnings}};
}

ReportDocument ReportDocument::from_json(const json& j) {
  try {
    if (j.at("schema").get<int>() != kReportSchemaVersion) {
      throw ParseError("unsupported report schema " + j.at("schema").dump());
    }
    ReportDocument doc;
    doc.command = j.at("command").get<std::string>();
    doc.inputs = j.at("inputs");
    doc.results = j.at("results");
    doc.warnings = j.at("warnings").get<std::vector<std::string>>();
    return doc;
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed report: ") + e.what());
  }
}

std::string render_pretty(const ReportDocument& doc) {
  std::ostringstream out;
  out << "command  " << doc.command << '\n';
  render_value(out, "inputs", doc.inputs);
  render_value(out, "", doc.results);
  for (const std::string& w : doc.warnings) out << "warning: " << w << '\n';
  return out.str();
}

json to_json(const SummaryStats& s) {
  json quantiles = json::object();
  for (const auto& [q, value] : s.quantiles) quantiles[quantile_label(q)] = value;
  return json{{"n", s.n}, {"mean", s.mean}, {"quantiles", quantiles}};
}

json to_json(const RayleighParams& p) {
  return json{{"family", "rayleigh"}, {"sigma", p.sigma()}};
}

json to_json(const RiceParams& p) {
  return json{{"family", "rice"}, {"v", p.v()}, {"sigma", p.sigma()}};
}

json to_json(const NormalParams& p) {
  return json{{"family", "normal"}, {"mu", p.mu}, {"sigma", p.sigma}};
}

json to_json(const ApproxConstants& c) {
  return json{{"metric", c.metric.label()}, {"alpha", c.alpha}, {"beta", c.beta},
              {"gamma", c.gamma},           {"rmse", c.rmse}};
}

json to_json(const CorrectionResult& r) {
  json j{{"metric", r.metric.label()},
         {"real_stat", r.real_stat},
         {"sigma_real", r.sigma_real},
         {"impact", r.impact}};
  if (r.bounds) j["impact_bounds"] = json{{"lower", r.bounds->lower}, {"upper", r.bounds->upper}};
  if (r.provenance) {
    j["provenance"] = json{{"validation", r.provenance->validation},
                           {"after_map", r.provenance->after_map},
                           {"after_marking", r.provenance->after_marking}};
  }
  return j;
}

json to_json(const DominanceVerdict& v) {
  json j{{"metric", v.metric.label()},
         {"ratio_v_over_u", v.ratio_v_over_u},
         {"dominant", v.dominant == Dominant::kMarking ? "marking" : "map"},
         {"marking_impact", v.marking_impact},
         {"map_impact", v.map_impact}};
  j["threshold"] = v.threshold ? json(*v.threshold) : json(nullptr);
  return j;
}

json to_json(const ExperimentReport& r, const std::vector<Metric>& metrics) {
  json rows = json::array();
  for (const Metric& m : metrics) {
    json row{{"metric", m.label()},
             {"validation", r.validation.stat(m)},
             {"experimental_real", r.experimental_real.stat(m)}};
    if (r.marking.n > 0) row["marking"] = r.marking.stat(m);
    if (r.relative_gaps.count(m)) {
      row["theoretical_real"] = r.theoretical_real.stat(m);
      row["relative_gap"] = r.relative_gaps.at(m);
    }
    if (r.validation_gaps.count(m)) row["validation_gap"] = r.validation_gaps.at(m);
    rows.push_back(row);
  }
  json j{{"validation", to_json(r.validation)},
         {"experimental_real", to_json(r.experimental_real)},
         {"table", rows}};
  if (r.marking.n > 0) j["marking"] = to_json(r.marking);
  return j;
}

json to_json(const MapSweepEntry& e) {
  return json{{"shift", e.shift},
              {"v", e.v},
              {"report", to_json(e.report, map_experiment_metrics())},
              {"infeasible", e.infeasible}};
}

}  // namespace gtcorr
