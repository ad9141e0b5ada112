#include "ionswap/report.hpp"

#include <cstdio>

#include "ionswap/errors.hpp"
#include "ionswap/version.hpp"

namespace ionswap {

Metadata make_metadata(const std::string& config_hash) {
  return Metadata{config_hash, kToolVersion, kUnitSystem};
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

std::string csv_cell(const std::string& cell) {
  bool quote = cell.find_first_of(",\"\r\n") != std::string::npos;
  if (!quote) return cell;
  std::string out = "\"";
  for (char c : cell) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

CsvBuilder::CsvBuilder(const Metadata& meta, std::vector<std::string> columns)
    : n_cols_(columns.size()) {
  body_ += "# config_hash: " + meta.config_hash + "\r\n";
  body_ += "# tool_version: " + meta.tool_version + "\r\n";
  body_ += "# unit_system: " + meta.unit_system + "\r\n";
  for (size_t i = 0; i < columns.size(); ++i) {
    if (i) header_ += ',';
    header_ += csv_cell(columns[i]);
  }
  header_ += "\r\n";
}

void CsvBuilder::comment(const std::string& text) {
  if (header_written_) throw ConfigError("CSV comments must precede the data rows");
  body_ += "# " + text + "\r\n";
}

void CsvBuilder::flush_header() {
  if (!header_written_) {
    body_ += header_;
    header_written_ = true;
  }
}

void CsvBuilder::row(const std::vector<std::string>& cells) {
  if (cells.size() != n_cols_) throw ConfigError("CSV row width mismatch");
  flush_header();
  for (size_t i = 0; i < cells.size(); ++i) {
    if (i) body_ += ',';
    body_ += csv_cell(cells[i]);
  }
  body_ += "\r\n";
}

void CsvBuilder::row_values(std::initializer_list<double> values) {
  std::vector<std::string> cells;
  cells.reserve(values.size());
  for (double v : values) cells.push_back(format_double(v));
  row(cells);
}

std::string CsvBuilder::str() const {
  std::string out = body_;
  if (!header_written_) out += header_;
  return out;
}

nlohmann::json metadata_json(const Metadata& meta) {
  return nlohmann::json{{"config_hash", meta.config_hash},
                        {"tool_version", meta.tool_version},
                        {"unit_system", meta.unit_system}};
}

std::string render_json(nlohmann::json doc, const Metadata& meta) {
  doc["metadata"] = metadata_json(meta);
  return doc.dump(2) + "\n";
}

}  // namespace ionswap
