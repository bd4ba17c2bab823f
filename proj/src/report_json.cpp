#include "infodep/report_json.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace infodep {

nlohmann::json json_number(double v) {
  if (!std::isfinite(v)) return nullptr;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  const double r = std::strtod(buf, nullptr);
  return r == 0.0 ? 0.0 : r;  // no negative zero
}

nlohmann::json to_json(const MeasureReport& report) {
  nlohmann::json diagnostics = nlohmann::json::object();
  for (const auto& [k, v] : report.diagnostics) diagnostics[k] = json_number(v);
  nlohmann::json provenance = nlohmann::json::object();
  for (const auto& [k, v] : report.provenance) provenance[k] = v;
  return nlohmann::json{
      {"measure", report.measure},
      {"raw", json_number(report.dep.raw)},
      {"value", json_number(report.dep.value)},
      {"clamped", report.dep.clamped},
      {"interpretation", report.interpretation},
      {"diagnostics", diagnostics},
      {"warnings", report.warnings},
      {"provenance", provenance},
  };
}

nlohmann::json report_document(const std::string& subcommand, const nlohmann::json& config,
                               const std::vector<MeasureReport>& reports, const nlohmann::json& extra) {
  nlohmann::json doc;
  doc["schema_version"] = kReportSchemaVersion;
  doc["tool"] = "infodep";
  doc["tool_version"] = INFODEP_VERSION;
  doc["subcommand"] = subcommand;
  doc["config"] = config;
  doc["reports"] = nlohmann::json::array();
  for (const auto& r : reports) doc["reports"].push_back(to_json(r));
  for (const auto& [k, v] : extra.items()) doc[k] = v;
  return doc;
}

nlohmann::json error_document(const Error& error) {
  return {{"error",
           {{"kind", std::string(to_string(error.kind()))},
            {"message", error.message()},
            {"exit_code", exit_code(error.kind())}}}};
}

std::string render(const nlohmann::json& doc) { return doc.dump(2) + "\n"; }

}  // namespace infodep
