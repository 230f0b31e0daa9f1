#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "gtcorr/approx.h"
#include "gtcorr/compare.h"
#include "gtcorr/correct.h"
#include "gtcorr/estimate.h"
#include "gtcorr/sim.h"

namespace gtcorr {

inline constexpr int kReportSchemaVersion = 1;

// Machine-readable output of one CLI command. See docs/report-schema.md.
struct ReportDocument {
  ReportDocument() = default;
  explicit ReportDocument(std::string cmd) : command(std::move(cmd)) {}

  std::string command;
  nlohmann::json inputs = nlohmann::json::object();
  nlohmann::json results = nlohmann::json::object();
  std::vector<std::string> warnings;

  nlohmann::json to_json() const;
  // Throws ParseError on a missing field or an unknown schema version.
  static ReportDocument from_json(const nlohmann::json& j);
};

// Aligned human-readable rendering: scalars as "key  value" lines, arrays of
// flat objects as tables.
std::string render_pretty(const ReportDocument& doc);

nlohmann::json to_json(const SummaryStats& s);
nlohmann::json to_json(const RayleighParams& p);
nlohmann::json to_json(const RiceParams& p);
nlohmann::json to_json(const NormalParams& p);
nlohmann::json to_json(const ApproxConstants& c);
nlohmann::json to_json(const CorrectionResult& r);
nlohmann::json to_json(const DominanceVerdict& v);
nlohmann::json to_json(const ExperimentReport& r, const std::vector<Metric>& metrics);
nlohmann::json to_json(const MapSweepEntry& e);

}  // namespace gtcorr
