#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "apartness_lab/apartness.hpp"

namespace apartness_lab {

/// Human-readable block for one classification report.
std::string format_report_text(const ClassificationReport& report);

/// Version of the record format written by `format_records`.
inline constexpr int kRecordSchema = 1;

/// Line-delimited records: a `schema: 1` header line, then one JSON object per
/// report. Field names follow ClassificationReport and are stable across releases.
std::string format_records(const std::vector<ClassificationReport>& reports);

/// Inverse of `format_records`. Throws std::runtime_error on a missing or
/// unsupported schema header, malformed lines or missing fields.
std::vector<ClassificationReport> parse_records(std::string_view text);

}  // namespace apartness_lab
