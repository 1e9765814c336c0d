#include <doctest.h>

#include "laxbench/report.hpp"
#include "laxbench/spaces.hpp"
#include "laxbench/suites.hpp"

using namespace laxbench;

namespace {

Json without_run(Json j) {
  j.erase("run");
  return j;
}

SuiteConfig config(const std::string& suite, int r, int d, int points) {
  SuiteConfig c;
  c.suite = suite;
  c.r = r;
  c.d = d;
  c.points = points;
  c.seed = 7;
  return c;
}

}  // namespace

TEST_CASE("scalar and matrix serialization round trips") {
  for (const char* s : {"0", "-3/7", "12345678901234567890/3"}) {
    const Rational v = parse_rational(s);
    CHECK(rational_from_json(to_json(v)) == v);
  }
  CHECK(rational_from_json(Json(1.5)) == make_rational(3, 2));
  CHECK_THROWS_AS(rational_from_json(Json::array()), InputError);

  for (auto p : {DegreeProfile::beauville(3, 2), DegreeProfile::bullet(2, 1), DegreeProfile::bv(2, 3)}) {
    CHECK(profile_from_json(to_json(p)) == p);
    RationalSampler rs(61);
    const auto a = random_polymat(rs, p);
    CHECK(polymat_from_json(to_json(a)) == a);
    CHECK(polymat_from_json(Json::parse(to_json(a).dump())) == a);
  }
  CHECK_THROWS_AS(profile_from_json(Json{{"kind", "other"}, {"r", 2}, {"d", 1}}), InputError);
  CHECK_THROWS_AS(polymat_from_json(Json{{"entries", Json::array()}}), InputError);
}

TEST_CASE("report records") {
  Report r;
  r.suite = "demo";
  r.add("good", "some identity", true);
  r.add("bad", "another identity", false, "off by one");
  r.skip("later", "third identity", "not applicable");
  CHECK(r.count(Status::pass) == 1);
  CHECK(r.count(Status::fail) == 1);
  CHECK(r.count(Status::skip) == 1);
  CHECK_FALSE(r.passed());
  // failures always carry a witness
  CHECK_FALSE(r.checks[1].witness.is_null());

  const Report back = report_from_json(report_to_json(r));
  CHECK(report_to_json(back) == report_to_json(r));
  CHECK(report_from_json(Json::parse(emit_report(r, ReportFormat::json))).checks.size() == 3);

  const std::string text = emit_report(r, ReportFormat::text);
  CHECK(text.find("[fail] bad  <another identity>") != std::string::npos);
  CHECK(text.find("witness:") != std::string::npos);
  CHECK(text.find("1 pass, 1 fail, 1 skip") != std::string::npos);

  Json broken = report_to_json(r);
  broken["schema_version"] = 99;
  CHECK_THROWS_AS(report_from_json(broken), InputError);
  CHECK_THROWS_AS(report_from_json(Json{{"schema_version", 1}}), InputError);
  broken = report_to_json(r);
  broken["checks"][0]["status"] = "maybe";
  CHECK_THROWS_AS(report_from_json(broken), InputError);
}

TEST_CASE("configuration validation") {
  CHECK_NOTHROW(config("gauge", 2, 1, 1).validate());
  CHECK_THROWS_AS(config("nonsense", 2, 1, 1).validate(), InputError);
  CHECK_THROWS_AS(config("gauge", 4, 1, 1).validate(), InputError);
  CHECK_THROWS_AS(config("gauge", 2, 0, 1).validate(), InputError);
  CHECK_THROWS_AS(config("gauge", 2, 4, 1).validate(), InputError);
  CHECK_THROWS_AS(config("gauge", 2, 1, -1).validate(), InputError);
  CHECK_THROWS_AS(config("r2-charts", 3, 2, 1).validate(), InputError);

  auto c = config("casimirs", 2, 1, 1);
  c.phi_text = "x^9";
  CHECK_THROWS_AS(c.validate(), InputError);
  c.phi_text = "1, 1/2";
  CHECK_NOTHROW(c.validate());

  auto a = config("appendix", 2, 1, 1);
  a.nodes_text = "0,1";
  CHECK_THROWS_AS(a.validate(), InputError);
  a.nodes_text = "0,1,2";
  CHECK_NOTHROW(a.validate());

  CHECK_THROWS_AS(parse_backend("quad"), InputError);
  CHECK_THROWS_AS(parse_system("other"), InputError);
  CHECK(parse_system(system_name(System::bv)) == System::bv);
}

TEST_CASE("suites are deterministic apart from the run block") {
  for (const std::string suite : {"tensor-axioms", "gauge", "appendix"}) {
    const auto c = config(suite, 2, 1, 2);
    const Json a = report_to_json(run_suite(c));
    const Json b = report_to_json(run_suite(c));
    CHECK(without_run(a) == without_run(b));
    CHECK(a.contains("run"));
    CHECK(a["config"]["seed"] == 7);
  }
  auto c1 = config("gauge", 2, 2, 2), c2 = c1;
  c2.seed = 8;
  CHECK_FALSE(without_run(report_to_json(run_suite(c1))) == without_run(report_to_json(run_suite(c2))));
}

TEST_CASE("zero points leaves only structural checks") {
  for (const std::string suite : {"gauge", "multi-ham", "appendix"}) {
    const Report r = run_suite(config(suite, 2, 1, 0));
    CHECK(r.passed());
    for (const auto& c : r.checks) CHECK(c.name.find("point ") == std::string::npos);
  }
}
