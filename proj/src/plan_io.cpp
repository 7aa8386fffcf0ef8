#include "ctd/plan_io.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <istream>
#include <iterator>
#include <ostream>

namespace ctd::io {

using nlohmann::json;

std::vector<CsvRow> read_csv(std::istream& in) {
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  std::vector<CsvRow> rows;
  CsvRow row;
  std::string field;
  bool quoted = false;
  bool row_has_content = false;

  auto end_field = [&] {
    row.push_back(std::move(field));
    field.clear();
  };
  auto end_row = [&] {
    end_field();
    if (row_has_content || row.size() > 1) rows.push_back(std::move(row));
    row.clear();
    row_has_content = false;
  };

  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
      continue;
    }
    switch (c) {
      case '"':
        quoted = true;
        row_has_content = true;
        break;
      case ',':
        end_field();
        break;
      case '\r':
        break;
      case '\n':
        end_row();
        break;
      default:
        field += c;
        row_has_content = true;
    }
  }
  if (quoted) throw ModelError("CSV ends inside a quoted field");
  if (row_has_content || !row.empty()) end_row();
  return rows;
}

void write_csv_row(std::ostream& out, const CsvRow& row) {
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (i) out << ',';
    const std::string& f = row[i];
    if (f.find_first_of(",\"\n\r") == std::string::npos) {
      out << f;
      continue;
    }
    out << '"';
    for (char c : f) {
      if (c == '"') out << '"';
      out << c;
    }
    out << '"';
  }
  out << '\n';
}

void write_plan_csv(std::ostream& out, const Model& model, const std::vector<Test>& tests) {
  CsvRow header;
  for (const auto& attr : model.attributes) header.push_back(attr.name);
  write_csv_row(out, header);
  for (const Test& test : tests) write_csv_row(out, model.labels(test));
}

std::vector<Test> read_plan_csv(std::istream& in, const Model& model) {
  const std::vector<CsvRow> rows = read_csv(in);
  if (rows.empty()) throw ModelError("plan CSV has no header row");

  const CsvRow& header = rows.front();
  std::vector<std::uint32_t> attr_of_column;
  std::vector<bool> seen(model.attribute_count(), false);
  for (const auto& name : header) {
    const auto attr = model.find_attribute(name);
    if (!attr) throw ModelError("plan CSV column '" + trim(name) + "' is not a model attribute");
    if (seen[*attr]) throw ModelError("plan CSV repeats column '" + trim(name) + "'");
    seen[*attr] = true;
    attr_of_column.push_back(*attr);
  }
  for (std::size_t a = 0; a < seen.size(); ++a) {
    if (!seen[a]) throw ModelError("plan CSV lacks column '" + model.attributes[a].name + "'");
  }

  std::vector<Test> tests;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    if (rows[r].size() != header.size()) {
      throw ModelError("plan CSV row " + std::to_string(r) + " has " +
                       std::to_string(rows[r].size()) + " fields, expected " +
                       std::to_string(header.size()));
    }
    Test test(model.attribute_count());
    for (std::size_t c = 0; c < header.size(); ++c) {
      const std::uint32_t a = attr_of_column[c];
      test[a] = model.bind(model.attributes[a].name, rows[r][c]).value;
    }
    tests.push_back(std::move(test));
  }
  return tests;
}

json plan_to_json(const Model& model, const TestPlan& plan) {
  json attrs = json::array();
  for (const auto& a : model.attributes) attrs.push_back(a.name);
  json tests = json::array();
  json provenance = json::array();
  for (std::size_t i = 0; i < plan.tests.size(); ++i) {
    tests.push_back(model.labels(plan.tests[i]));
    const bool imported = i < plan.provenance.size() && plan.provenance[i] == Provenance::Imported;
    provenance.push_back(imported ? "imported" : "generated");
  }
  return {{"schema_version", kSchemaVersion},
          {"attributes", attrs},
          {"tests", tests},
          {"provenance", provenance},
          {"seed", plan.seed},
          {"partial", plan.partial},
          {"coverage",
           {{"t", plan.t},
            {"covered", plan.covered},
            {"total", plan.total_feasible},
            {"percent", plan.percent()}}}};
}

void write_concrete_csv(std::ostream& out, const ConcretePlan& plan) {
  write_csv_row(out, plan.columns);
  for (const auto& row : plan.rows) write_csv_row(out, row);
}

json concrete_to_json(const ConcretePlan& plan) {
  return {{"schema_version", kSchemaVersion},
          {"attributes", plan.columns},
          {"tests", plan.rows},
          {"seed", plan.seed}};
}

json report_to_json(const Model& model, const CoverageReport& report,
                    std::optional<std::size_t> max_missing) {
  json missing = json::array();
  const std::size_t shown = std::min(report.missing.size(), max_missing.value_or(SIZE_MAX));
  for (std::size_t i = 0; i < shown; ++i) {
    json tuple = json::array();
    for (const auto& b : report.missing[i].bindings) {
      tuple.push_back({{"attr", model.attributes[b.attribute].name}, {"value", model.label(b)}});
    }
    missing.push_back(tuple);
  }
  return {{"schema_version", kSchemaVersion},
          {"t", report.t},
          {"covered", report.covered},
          {"total", report.total},
          {"percent", report.percent()},
          {"missing_count", report.missing.size()},
          {"missing", missing},
          {"illegal_tests", report.illegal_tests}};
}

void write_report_text(std::ostream& out, const Model& model, const CoverageReport& report,
                       std::optional<std::size_t> max_missing) {
  char percent[32];
  std::snprintf(percent, sizeof percent, "%.2f", report.percent());
  out << "t: " << report.t << '\n'
      << "covered: " << report.covered << '\n'
      << "total: " << report.total << '\n'
      << "percent: " << percent << '\n';
  if (!report.illegal_tests.empty()) {
    out << "illegal tests (no credit):";
    for (auto i : report.illegal_tests) out << ' ' << (i + 1);
    out << '\n';
  }
  out << "missing: " << report.missing.size() << '\n';
  const std::size_t shown = std::min(report.missing.size(), max_missing.value_or(SIZE_MAX));
  for (std::size_t i = 0; i < shown; ++i) out << "  " << describe(model, report.missing[i]) << '\n';
  if (shown < report.missing.size()) {
    out << "  ... " << (report.missing.size() - shown) << " more\n";
  }
}

std::string row_hash(const std::vector<std::string>& labels) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  auto mix = [&](char c) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ull;
  };
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (i) mix(',');
    for (char c : labels[i]) mix(c);
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::vector<VerdictEntry> read_results_csv(
    std::istream& in, const std::vector<std::vector<std::string>>& plan_labels) {
  const std::vector<CsvRow> rows = read_csv(in);
  if (rows.empty()) throw ModelError("results CSV has no header row");
  auto lower = [](std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
  };
  if (rows.front().size() != 2 || lower(trim(rows.front()[0])) != "test" ||
      lower(trim(rows.front()[1])) != "verdict") {
    throw ModelError("results CSV header must be 'test,verdict'");
  }

  std::vector<std::string> hashes;
  for (const auto& labels : plan_labels) hashes.push_back(row_hash(labels));

  std::vector<VerdictEntry> out;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    if (rows[r].size() != 2) throw ModelError("results CSV row " + std::to_string(r) + " is malformed");
    const std::string key = trim(rows[r][0]);
    std::string verdict = trim(rows[r][1]);
    std::transform(verdict.begin(), verdict.end(), verdict.begin(),
                   [](unsigned char c) { return static_cast<char>(std::toupper(c)); });

    VerdictEntry entry;
    if (verdict == "PASS") {
      entry.verdict = Verdict::Pass;
    } else if (verdict == "FAIL") {
      entry.verdict = Verdict::Fail;
    } else {
      throw ModelError("results CSV row " + std::to_string(r) + ": verdict must be PASS or FAIL");
    }

    const bool numeric = !key.empty() && key.size() < 16 &&
                         std::all_of(key.begin(), key.end(), [](unsigned char c) { return std::isdigit(c); });
    if (numeric) {
      const std::size_t index = std::stoul(key);
      if (index < 1 || index > plan_labels.size()) {
        throw ModelError("results reference unknown plan row " + key);
      }
      entry.row = index - 1;
    } else {
      const auto it = std::find(hashes.begin(), hashes.end(), key);
      if (it == hashes.end()) throw ModelError("results reference unknown plan row '" + key + "'");
      entry.row = static_cast<std::size_t>(it - hashes.begin());
    }
    out.push_back(entry);
  }
  return out;
}

}  // namespace ctd::io
