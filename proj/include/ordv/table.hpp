// Table generation: the torus-knot family table and the knot-table CSV
// audit. Ingested data is never recomputed from diagrams; the audit only
// checks the reported numbers against the bridge-index rule.
#pragma once

#include <cctype>
#include <istream>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ordv/bounds.hpp"

namespace ordv {

enum class TableFormat { Text, Csv, Markdown, JsonLines };

inline std::optional<TableFormat> parse_table_format(const std::string& s) {
  if (s == "txt" || s == "text") return TableFormat::Text;
  if (s == "csv") return TableFormat::Csv;
  if (s == "md" || s == "markdown") return TableFormat::Markdown;
  if (s == "json-lines" || s == "jsonl") return TableFormat::JsonLines;
  return std::nullopt;
}

struct TorusRow {
  int p = 0, q = 0;
  int ord = 0;     // computed through the staircase pipeline
  int bridge = 0;  // min{p,q}
  bool sharp = false;
};

inline std::vector<TorusRow> torus_table(int max_q) {
  std::vector<TorusRow> rows;
  for (int p = 2; p < max_q; ++p)
    for (int q = p + 1; q <= max_q; ++q) {
      if (std::gcd(p, q) != 1) continue;
      TorusRow row;
      row.p = p;
      row.q = q;
      row.ord = ord_v_of(*make_torus(p, q));
      row.bridge = std::min(p, q);
      row.sharp = row.ord == row.bridge - 1;
      rows.push_back(row);
    }
  return rows;
}

inline std::string render_torus_table(const std::vector<TorusRow>& rows,
                                      TableFormat f) {
  std::ostringstream out;
  switch (f) {
    case TableFormat::Csv:
      out << "p,q,ord_v,bridge,sharp\n";
      for (const auto& r : rows)
        out << r.p << "," << r.q << "," << r.ord << "," << r.bridge << ","
            << (r.sharp ? "yes" : "no") << "\n";
      break;
    case TableFormat::Markdown:
      out << "| p | q | ord_v | bridge | sharp |\n";
      out << "|---|---|-------|--------|-------|\n";
      for (const auto& r : rows)
        out << "| " << r.p << " | " << r.q << " | " << r.ord << " | "
            << r.bridge << " | " << (r.sharp ? "yes" : "no") << " |\n";
      break;
    case TableFormat::JsonLines:
      for (const auto& r : rows)
        out << "{\"p\": " << r.p << ", \"q\": " << r.q
            << ", \"ord_v\": " << r.ord << ", \"bridge\": " << r.bridge
            << ", \"sharp\": " << (r.sharp ? "true" : "false") << "}\n";
      break;
    case TableFormat::Text:
      for (const auto& r : rows)
        out << "T(" << r.p << "," << r.q << "): ord_v = " << r.ord
            << ", br = " << r.bridge << (r.sharp ? " (sharp)" : "") << "\n";
      break;
  }
  return out.str();
}

// One audited row of an ingested knot table.
struct IngestRow {
  int line = 0;
  std::string name;
  int ord = 0;
  std::optional<int> bridge;
  char verdict = 'n';  // 'p' pass, 'f' fail, 'n' no bridge data
};

struct IngestReport {
  std::vector<IngestRow> rows;
  std::vector<std::string> errors;  // malformed lines
  int passes = 0;
  int failures = 0;

  bool ok() const { return failures == 0 && errors.empty(); }
};

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  for (auto& s : out) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.erase(0, 1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
      s.pop_back();
  }
  return out;
}

inline std::optional<int> parse_nonneg(const std::string& s) {
  if (s.empty()) return std::nullopt;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
  return std::stoi(s);
}

}  // namespace detail

// CSV format: header "name,ord_v,bridge"; the bridge field may be empty.
// verdict = pass iff ord_v <= bridge - 1.
inline IngestReport audit_table_csv(std::istream& in) {
  IngestReport report;
  std::string line;
  int line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    std::string trimmed = line;
    while (!trimmed.empty() && (trimmed.back() == '\r' || trimmed.back() == ' '))
      trimmed.pop_back();
    if (trimmed.empty()) continue;
    auto fields = detail::split_csv_line(trimmed);
    if (!header_seen) {
      if (fields.size() != 3 || fields[0] != "name" || fields[1] != "ord_v" ||
          fields[2] != "bridge") {
        report.errors.push_back("line " + std::to_string(line_no) +
                                ": expected header 'name,ord_v,bridge'");
        return report;
      }
      header_seen = true;
      continue;
    }
    if (fields.size() != 3) {
      report.errors.push_back("line " + std::to_string(line_no) +
                              ": expected 3 fields, got " +
                              std::to_string(fields.size()));
      continue;
    }
    IngestRow row;
    row.line = line_no;
    row.name = fields[0];
    auto ord = detail::parse_nonneg(fields[1]);
    if (row.name.empty() || !ord) {
      report.errors.push_back("line " + std::to_string(line_no) +
                              ": malformed row '" + trimmed + "'");
      continue;
    }
    row.ord = *ord;
    if (!fields[2].empty()) {
      auto bridge = detail::parse_nonneg(fields[2]);
      if (!bridge) {
        report.errors.push_back("line " + std::to_string(line_no) +
                                ": malformed bridge field '" + fields[2] + "'");
        continue;
      }
      row.bridge = *bridge;
      row.verdict = row.ord <= *bridge - 1 ? 'p' : 'f';
      (row.verdict == 'p' ? report.passes : report.failures)++;
    }
    report.rows.push_back(row);
  }
  return report;
}

inline std::string render_ingest_report(const IngestReport& report,
                                        TableFormat f) {
  std::ostringstream out;
  auto verdict_str = [](char v) {
    return v == 'p' ? "pass" : v == 'f' ? "fail" : "n/a";
  };
  switch (f) {
    case TableFormat::Csv:
      out << "name,ord_v,bridge,verdict\n";
      for (const auto& r : report.rows) {
        out << r.name << "," << r.ord << ",";
        if (r.bridge) out << *r.bridge;
        out << "," << verdict_str(r.verdict) << "\n";
      }
      break;
    case TableFormat::Markdown:
      out << "| name | ord_v | bridge | verdict |\n";
      out << "|------|-------|--------|---------|\n";
      for (const auto& r : report.rows) {
        out << "| " << r.name << " | " << r.ord << " | ";
        if (r.bridge)
          out << *r.bridge;
        else
          out << "-";
        out << " | " << verdict_str(r.verdict) << " |\n";
      }
      break;
    case TableFormat::JsonLines:
      for (const auto& r : report.rows) {
        out << "{\"name\": \"" << r.name << "\", \"ord_v\": " << r.ord;
        if (r.bridge) out << ", \"bridge\": " << *r.bridge;
        out << ", \"verdict\": \"" << verdict_str(r.verdict) << "\"}\n";
      }
      break;
    case TableFormat::Text:
      for (const auto& r : report.rows) {
        out << r.name << ": ord_v = " << r.ord;
        if (r.bridge) out << ", bridge = " << *r.bridge;
        out << " -> " << verdict_str(r.verdict) << "\n";
      }
      break;
  }
  if (f == TableFormat::Text || f == TableFormat::Markdown) {
    out << "\n";
    out << "audited " << report.rows.size() << " row(s): " << report.passes
        << " pass, " << report.failures << " fail\n";
  }
  if (!report.errors.empty()) {
    out << "errors:\n";
    for (const auto& e : report.errors) out << "  " << e << "\n";
  }
  return out.str();
}

}  // namespace ordv
