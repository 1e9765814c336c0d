#include "laxbench/report.hpp"

#include <iomanip>
#include <sstream>

namespace laxbench {

std::string status_name(Status s) {
  switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::skip: return "skip";
  }
  return "skip";
}

Status parse_status(const std::string& s) {
  if (s == "pass") return Status::pass;
  if (s == "fail") return Status::fail;
  if (s == "skip") return Status::skip;
  throw InputError("unknown status '" + s + "'");
}

void Report::add(std::string name, std::string anchor, bool ok, std::string detail, Json witness) {
  CheckRecord rec{std::move(name), std::move(anchor), ok ? Status::pass : Status::fail, std::move(detail),
                  std::move(witness)};
  if (!ok && rec.witness.is_null()) rec.witness = Json{{"detail", rec.detail}};
  checks.push_back(std::move(rec));
}

void Report::skip(std::string name, std::string anchor, std::string why) {
  checks.push_back({std::move(name), std::move(anchor), Status::skip, std::move(why), nullptr});
}

void Report::merge(const Report& other) {
  checks.insert(checks.end(), other.checks.begin(), other.checks.end());
}

int Report::count(Status s) const {
  int n = 0;
  for (const auto& c : checks)
    if (c.status == s) ++n;
  return n;
}

Json report_to_json(const Report& r) {
  Json j;
  j["schema_version"] = Report::schema_version;
  j["suite"] = r.suite;
  j["config"] = r.config;
  j["summary"] = {{"pass", r.count(Status::pass)}, {"fail", r.count(Status::fail)}, {"skip", r.count(Status::skip)}};
  Json checks = Json::array();
  for (const auto& c : r.checks) {
    Json e;
    e["name"] = c.name;
    e["anchor"] = c.anchor;
    e["status"] = status_name(c.status);
    e["detail"] = c.detail;
    e["witness"] = c.witness;
    checks.push_back(e);
  }
  j["checks"] = checks;
  // the only fields that change between identical runs
  j["run"] = {{"timestamp", r.timestamp}, {"runtime_seconds", r.runtime_seconds}};
  return j;
}

Report report_from_json(const Json& j) {
  try {
    if (j.at("schema_version").get<int>() != Report::schema_version) throw InputError("unsupported report schema version");
    Report r;
    r.suite = j.at("suite").get<std::string>();
    r.config = j.at("config");
    for (const auto& e : j.at("checks"))
      r.checks.push_back({e.at("name").get<std::string>(), e.at("anchor").get<std::string>(),
                          parse_status(e.at("status").get<std::string>()), e.at("detail").get<std::string>(),
                          e.at("witness")});
    r.runtime_seconds = j.at("run").at("runtime_seconds").get<double>();
    r.timestamp = j.at("run").at("timestamp").get<std::string>();
    return r;
  } catch (const Json::exception& e) {
    throw InputError(std::string("malformed report: ") + e.what());
  }
}

std::string emit_report(const Report& r, ReportFormat f) {
  if (f == ReportFormat::json) return report_to_json(r).dump(2) + "\n";
  std::ostringstream os;
  os << "suite " << r.suite << "  (" << r.count(Status::pass) << " pass, " << r.count(Status::fail) << " fail, "
     << r.count(Status::skip) << " skip)\n";
  for (const auto& c : r.checks) {
    os << "  [" << status_name(c.status) << "] " << c.name << "  <" << c.anchor << ">";
    if (!c.detail.empty()) os << "  " << c.detail;
    os << "\n";
    if (c.status == Status::fail) os << "      witness: " << c.witness.dump() << "\n";
  }
  os << std::fixed << std::setprecision(3) << "runtime " << r.runtime_seconds << " s\n";
  return os.str();
}

}  // namespace laxbench
