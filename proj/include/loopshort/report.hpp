// JSON verdict records and CSV summaries. Reports are deterministic for
// a fixed config except for the "timing" object, which consumers strip
// before comparing runs.

#pragma once

#include <json.hpp>

#include "loopshort/properties.hpp"

namespace loopshort {

inline constexpr const char* kReportSchema = "loopshort-report/1";

// Exit codes shared by the CLI and the batch runner.
inline constexpr int kExitHolds = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitCounterexample = 2;

nlohmann::json verdict_to_json(const Verdict& v, double wall_seconds);
int verdict_exit_code(const Verdict& v);

std::string csv_header();
std::string csv_row(const Verdict& v, double wall_seconds);

}  // namespace loopshort
