/// @file  plan_io.hpp
/// @brief Plan, coverage-report and results-file formats.
///
/// CSV dialect: comma separated, first row is the header, fields containing a
/// comma, quote or newline are double-quoted with quotes doubled.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "ctd/coverage.hpp"
#include "ctd/generator.hpp"
#include "ctd/instantiate.hpp"
#include "ctd/model.hpp"

namespace ctd::io {

inline constexpr int kSchemaVersion = 1;

using CsvRow = std::vector<std::string>;

[[nodiscard]] std::vector<CsvRow> read_csv(std::istream& in);
void write_csv_row(std::ostream& out, const CsvRow& row);

/// Header in declaration order, one row of labels per test.
void write_plan_csv(std::ostream& out, const Model& model, const std::vector<Test>& tests);

/// Reads tests by column name (any column order). Throws ModelError for
/// missing/unknown columns, ragged rows or unknown labels.
[[nodiscard]] std::vector<Test> read_plan_csv(std::istream& in, const Model& model);

[[nodiscard]] nlohmann::json plan_to_json(const Model& model, const TestPlan& plan);

void write_concrete_csv(std::ostream& out, const ConcretePlan& plan);
[[nodiscard]] nlohmann::json concrete_to_json(const ConcretePlan& plan);

[[nodiscard]] nlohmann::json report_to_json(const Model& model, const CoverageReport& report,
                                            std::optional<std::size_t> max_missing = {});
/// Human-readable summary with up to `max_missing` missing requirements.
void write_report_text(std::ostream& out, const Model& model, const CoverageReport& report,
                       std::optional<std::size_t> max_missing = {});

/// FNV-1a 64 of the row's labels joined by ',' rendered as 16 hex digits.
[[nodiscard]] std::string row_hash(const std::vector<std::string>& labels);

enum class Verdict { Pass, Fail };

struct VerdictEntry {
  std::size_t row = 0;  // zero-based plan row
  Verdict verdict = Verdict::Fail;
};

/// Results file: header `test,verdict`; `test` is a 1-based plan row index or
/// a row hash, `verdict` is PASS or FAIL (case-insensitive). Throws ModelError
/// for rows that do not exist in `plan_labels`.
[[nodiscard]] std::vector<VerdictEntry> read_results_csv(
    std::istream& in, const std::vector<std::vector<std::string>>& plan_labels);

}  // namespace ctd::io
