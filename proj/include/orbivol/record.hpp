#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "orbivol/verify.hpp"

namespace orbivol::cli {

inline constexpr const char* kToolName = "orbivol";
inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr int kSchemaVersion = 1;

// Every numeric field in machine output is either finite or this string.
inline constexpr const char* kUnderflowSentinel = "underflow-sentinel";
// Hurwitz ratios past 2^63 saturate to this.
inline constexpr const char* kExceedsSentinel = "exceeds-2^63";

enum class Format { text, csv, json };

std::optional<Format> parse_format(const std::string& name);

// Value with `digits` significant digits (%g style).
std::string fmt_sig(double value, int digits = 12);

// "m×10^e" with 12 significant digits of the mantissa, from a natural log.
std::string scientific_from_log(double natural_log);

// Finite doubles stay JSON numbers; anything else becomes the sentinel.
nlohmann::json json_number(double value);

// Record envelope shared by all commands: command echo, tool stamp.
nlohmann::json make_record(const std::string& command_echo);

// Report serialization; elapsed time is deliberately omitted so identical
// (config, seed) runs are byte-identical.
nlohmann::json report_to_json(const verify::TrialReport& report);
std::string report_csv_row(const verify::TrialReport& report);

int exit_code_for_reports(const std::vector<verify::TrialReport>& reports);

}  // namespace orbivol::cli
