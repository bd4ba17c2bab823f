#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "infodep/error.hpp"
#include "infodep/report.hpp"

namespace infodep {

inline constexpr int kReportSchemaVersion = 1;

/// Rounds to 12 significant digits so reports are stable across platforms.
/// Non-finite values become null.
nlohmann::json json_number(double v);

nlohmann::json to_json(const MeasureReport& report);

/// Top-level report document. `extra` members are merged in after `reports`.
nlohmann::json report_document(const std::string& subcommand, const nlohmann::json& config,
                               const std::vector<MeasureReport>& reports,
                               const nlohmann::json& extra = nlohmann::json::object());

nlohmann::json error_document(const Error& error);

/// Two-space indented text with a trailing newline.
std::string render(const nlohmann::json& doc);

}  // namespace infodep
