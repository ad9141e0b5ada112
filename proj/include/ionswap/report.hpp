#pragma once

#include <initializer_list>
#include <string>
#include <vector>

#include <json.hpp>

namespace ionswap {

// Stamped into the header of every emitted file.
struct Metadata {
  std::string config_hash;
  std::string tool_version;
  std::string unit_system;
};

Metadata make_metadata(const std::string& config_hash);

// Canonical number text; fixed %.17g keeps emitted files byte-stable.
std::string format_double(double v);

// RFC-4180 body preceded by '#'-prefixed metadata comment lines. Cells are
// quoted only when they contain a delimiter, quote or newline. Extra comment
// lines may be added before the first data row.
class CsvBuilder {
 public:
  CsvBuilder(const Metadata& meta, std::vector<std::string> columns);
  void comment(const std::string& text);  // only before the first row
  void row(const std::vector<std::string>& cells);
  void row_values(std::initializer_list<double> values);
  std::string str() const;

 private:
  size_t n_cols_;
  bool header_written_ = false;
  std::string header_;
  std::string body_;
  void flush_header();
};

nlohmann::json metadata_json(const Metadata& meta);

// Pretty-printed JSON document with a `metadata` block; stable key order.
std::string render_json(nlohmann::json doc, const Metadata& meta);

}  // namespace ionswap
