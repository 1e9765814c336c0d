#pragma once

#include <string>
#include <vector>

#include "laxbench/io.hpp"

namespace laxbench {

enum class Status { pass, fail, skip };

std::string status_name(Status s);
Status parse_status(const std::string& s);

struct CheckRecord {
  std::string name;
  std::string anchor;  // which identity the check exercises
  Status status = Status::skip;
  std::string detail;
  Json witness;        // always present on failures
};

struct Report {
  static constexpr int schema_version = 1;
  std::string suite;
  Json config;
  std::vector<CheckRecord> checks;
  double runtime_seconds = 0.0;
  std::string timestamp;

  /// Appends a record; a failing record without a witness gets the detail as witness.
  void add(std::string name, std::string anchor, bool ok, std::string detail = {}, Json witness = nullptr);
  void skip(std::string name, std::string anchor, std::string why);
  void merge(const Report& other);

  int count(Status s) const;
  bool passed() const { return count(Status::fail) == 0; }
};

enum class ReportFormat { json, text };

std::string emit_report(const Report& r, ReportFormat f);
Json report_to_json(const Report& r);
Report report_from_json(const Json& j);

}  // namespace laxbench
