#include "orbivol/record.hpp"

#include <cmath>
#include <cstdio>

namespace orbivol::cli {

std::optional<Format> parse_format(const std::string& name) {
  if (name == "text") return Format::text;
  if (name == "csv") return Format::csv;
  if (name == "json") return Format::json;
  return std::nullopt;
}

std::string fmt_sig(double value, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", digits, value);
  return buf;
}

std::string scientific_from_log(double natural_log) {
  if (!std::isfinite(natural_log)) return kUnderflowSentinel;
  const double log10_value = natural_log / 2.302585092994045684017991;
  double exponent = std::floor(log10_value);
  double mantissa = std::pow(10.0, log10_value - exponent);
  // Rounding at 12 digits can push the mantissa to 10.0; renormalize.
  if (mantissa >= 9.999999999995) {
    mantissa /= 10.0;
    exponent += 1.0;
  }
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.11f×10^%d", mantissa,
                static_cast<int>(exponent));
  return buf;
}

nlohmann::json json_number(double value) {
  if (std::isfinite(value)) return value;
  return kUnderflowSentinel;
}

nlohmann::json make_record(const std::string& command_echo) {
  nlohmann::json record;
  record["command"] = command_echo;
  record["tool"] = {{"name", kToolName},
                    {"version", kToolVersion},
                    {"schema", kSchemaVersion}};
  record["inputs"] = nlohmann::json::object();
  record["results"] = nlohmann::json::object();
  return record;
}

nlohmann::json report_to_json(const verify::TrialReport& report) {
  nlohmann::json j;
  j["lemma"] = report.lemma_id;
  j["trials"] = report.trials;
  j["violations"] = report.violations;
  j["min_slack"] = json_number(report.min_slack);
  j["worst_seed"] = report.worst_seed;
  return j;
}

std::string report_csv_row(const verify::TrialReport& report) {
  std::string row = report.lemma_id;
  row += ',';
  row += std::to_string(report.trials);
  row += ',';
  row += std::to_string(report.violations);
  row += ',';
  row += std::isfinite(report.min_slack) ? fmt_sig(report.min_slack, 17)
                                         : std::string(kUnderflowSentinel);
  row += ',';
  row += std::to_string(report.worst_seed);
  return row;
}

int exit_code_for_reports(const std::vector<verify::TrialReport>& reports) {
  return verify::total_violations(reports) > 0 ? 1 : 0;
}

}  // namespace orbivol::cli
