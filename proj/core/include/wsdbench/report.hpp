#pragma once

#include <iosfwd>
#include <string>

#include "wsdbench/eval.hpp"

namespace wsd {

/// Fixed-point formatting used by every report: six decimals, C locale.
std::string format_score(double value);

/// Tab-separated table, one row per benchmark cell in request order.
/// Columns: algorithm, feature_set, micro_recall, p_value_vs_dbn,
/// n_tasks_failed. Unavailable numbers print "-".
void write_report_tsv(const BenchReport& report, std::ostream& out);

/// Same table plus per-task outcomes, as JSON with sorted keys.
void write_report_json(const BenchReport& report, std::ostream& out);

/// The TSV table rendered as a Markdown pipe table.
void write_report_markdown(const BenchReport& report, std::ostream& out);

void write_report_tsv_file(const BenchReport& report, const std::string& path);
void write_report_json_file(const BenchReport& report, const std::string& path);
void write_report_markdown_file(const BenchReport& report, const std::string& path);

/// Inverse of write_report_json. Rejects unknown format or version fields.
BenchReport parse_report_json(const std::string& text);
BenchReport load_report_json_file(const std::string& path);

} // namespace wsd
