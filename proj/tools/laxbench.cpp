#include <CLI11.hpp>

#include <ctime>
#include <iostream>

#include "laxbench/suites.hpp"

using namespace laxbench;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_failed = 1;
constexpr int exit_config = 2;

std::string utc_now() {
  const std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-")
    std::cout << text;
  else
    write_text_file(path, text);
}

std::optional<Rational> parse_c(const std::string& s) {
  if (s == "inf" || s == "infinity") return std::nullopt;
  return parse_rational(s);
}

ChartSystem parse_flow_system(const std::string& s) {
  if (s == "beauville") return ChartSystem::s_infty;
  if (s == "bv") return ChartSystem::s_prime_infty;
  return parse_chart_system(s);
}

struct Options {
  std::string system = "beauville";
  int r = 2, d = 1;
  std::string phi;
  std::uint64_t seed = 1;
  std::string backend = "exact";
  int points = 5;
  std::string suite;
  std::string nodes;
  std::string c = "inf";
  std::string in, out, json;
  std::string y0 = "1/2";
  double t = 1.0;
  int steps = 1000;
  std::string format = "text";
};

int cmd_tensor(const Options& o) {
  const System sys = parse_system(o.system);
  if (o.r < 1 || o.d < 0 || (sys == System::bv && o.d < 1)) throw InputError("need r >= 1, d >= 0 (d >= 1 for bv)");
  const Phi phi = parse_phi(o.phi.empty() ? "x^0" : o.phi, o.d);
  const BracketTable t = build_tensor(sys, o.r, o.d, phi);
  emit(to_json(t).dump(2) + "\n", o.json);
  return exit_ok;
}

int cmd_verify(const Options& o) {
  SuiteConfig cfg;
  cfg.suite = o.suite;
  cfg.system = parse_system(o.system);
  cfg.r = o.r;
  cfg.d = o.d;
  if (!o.phi.empty()) cfg.phi_text = o.phi;
  cfg.seed = o.seed;
  cfg.backend = parse_backend(o.backend);
  cfg.points = o.points;
  if (!o.nodes.empty()) cfg.nodes_text = o.nodes;
  cfg.c = parse_c(o.c);
  cfg.y0 = parse_rational(o.y0);
  cfg.t_end = o.t;
  cfg.steps = o.steps;
  cfg.validate();
  Report rep = run_suite(cfg);
  rep.timestamp = utc_now();
  if (!o.json.empty()) emit(emit_report(rep, ReportFormat::json), o.json);
  if (o.json != "-") std::cout << emit_report(rep, o.format == "json" ? ReportFormat::json : ReportFormat::text);
  return rep.passed() ? exit_ok : exit_failed;
}

int cmd_normalize(const Options& o) {
  if (o.in.empty()) throw InputError("normalize needs --in");
  const PolyMat<Rational> a = polymat_from_json(Json::parse(read_text_file(o.in)));
  NormalForm<Rational> nf;
  const System sys = parse_system(o.system);
  if (sys == System::beauville) {
    if (a.profile().kind != ProfileKind::beauville) throw InputError("expected a beauville-profile matrix");
    nf = normalize_beauville(a, ExpansionPoint{parse_c(o.c)});
  } else {
    nf = normalize_bv_r2(a);
  }
  emit(to_json(nf).dump(2) + "\n", o.out);
  return exit_ok;
}

int cmd_flow(const Options& o) {
  const ChartSystem sys = parse_flow_system(o.system);
  if (o.d < 1 || o.d > 6 || (sys == ChartSystem::s_prime_infty && o.d < 2)) throw InputError("d outside the supported range");
  if (o.steps < 1 || o.t < 0) throw InputError("need steps >= 1 and t >= 0");
  PolyMat<Rational> s0;
  if (!o.in.empty()) {
    s0 = polymat_from_json(Json::parse(read_text_file(o.in)));
    if (!(s0.profile() == chart_profile(sys, o.d))) throw InputError("initial matrix has the wrong profile");
    s0 = chart_point(sys, o.d, chart_values(sys, o.d, s0));  // pins the fixed entry
  } else {
    RationalSampler rs(o.seed);
    s0 = chart_point(sys, o.d, random_chart(sys, o.d, rs, make_rational(1, 4)));
  }
  const Trajectory tr = lax_integrate(sys, s0, parse_rational(o.y0), o.t, o.steps);
  Json j = to_json(tr);
  j["initial"] = to_json(s0);
  if (!o.json.empty()) emit(j.dump(2) + "\n", o.json);
  std::cout << chart_system_name(sys) << " d=" << o.d << " steps=" << o.steps << " max |dH|=" << tr.max_drift
            << " max off-chart velocity=" << tr.max_off_chart << "\n";
  return tr.max_drift <= 1e-8 ? exit_ok : exit_failed;
}

int cmd_report(const Options& o) {
  if (o.in.empty()) throw InputError("report needs --in");
  const Report rep = report_from_json(Json::parse(read_text_file(o.in)));
  emit(emit_report(rep, o.format == "json" ? ReportFormat::json : ReportFormat::text), o.out);
  return rep.passed() ? exit_ok : exit_failed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"laxbench: exact checks for polynomial-matrix integrable systems"};
  app.require_subcommand(1);
  Options o;

  auto* tensor = app.add_subcommand("tensor", "print the structure constants of a bracket");
  tensor->add_option("--system", o.system, "beauville | bv");
  tensor->add_option("--r", o.r, "matrix size");
  tensor->add_option("--d", o.d, "degree");
  tensor->add_option("--phi", o.phi, "x^i or comma-separated coefficients");
  tensor->add_option("--json", o.json, "output path (default stdout)");

  auto* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("--suite", o.suite, "suite name")->required()->check(CLI::IsMember(suite_names()));
  verify->add_option("--system", o.system, "beauville | bv");
  verify->add_option("--r", o.r, "matrix size (2 or 3)");
  verify->add_option("--d", o.d, "degree (1..3)");
  verify->add_option("--phi", o.phi, "x^i or comma-separated coefficients");
  verify->add_option("--seed", o.seed, "sampling seed");
  verify->add_option("--backend", o.backend, "exact | float");
  verify->add_option("--points", o.points, "random points per check");
  verify->add_option("--nodes", o.nodes, "comma-separated interpolation nodes");
  verify->add_option("--c", o.c, "expansion point: inf or a rational");
  verify->add_option("--y0", o.y0, "flow parameter");
  verify->add_option("--t", o.t, "integration time");
  verify->add_option("--steps", o.steps, "integration steps");
  verify->add_option("--json", o.json, "write the JSON report here ('-' for stdout only)");
  verify->add_option("--format", o.format, "stdout format: text | json")->check(CLI::IsMember({"text", "json"}));

  auto* normalize = app.add_subcommand("normalize", "compute a gauge normal form");
  normalize->add_option("--system", o.system, "beauville | bv");
  normalize->add_option("--c", o.c, "expansion point: inf or a rational");
  normalize->add_option("--in", o.in, "input matrix JSON")->required();
  normalize->add_option("--out", o.out, "output path (default stdout)");

  auto* flow = app.add_subcommand("flow", "integrate a lax flow on a size-two normal form");
  flow->add_option("--system", o.system, "s_infty | s_prime_infty");
  flow->add_option("--d", o.d, "degree");
  flow->add_option("--y0", o.y0, "flow parameter");
  flow->add_option("--t", o.t, "integration time");
  flow->add_option("--steps", o.steps, "RK4 steps");
  flow->add_option("--seed", o.seed, "seed for the initial point");
  flow->add_option("--in", o.in, "initial normal form JSON (optional)");
  flow->add_option("--json", o.json, "trajectory output path");

  auto* report = app.add_subcommand("report", "re-emit a saved JSON report");
  report->add_option("--in", o.in, "report JSON")->required();
  report->add_option("--out", o.out, "output path (default stdout)");
  report->add_option("--format", o.format, "text | json")->check(CLI::IsMember({"text", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? exit_ok : exit_config;
  }

  try {
    if (*tensor) return cmd_tensor(o);
    if (*verify) return cmd_verify(o);
    if (*normalize) return cmd_normalize(o);
    if (*flow) return cmd_flow(o);
    if (*report) return cmd_report(o);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_config;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_config;
  } catch (const Json::exception& e) {
    std::cerr << "error: malformed JSON: " << e.what() << "\n";
    return exit_config;
  }
  return exit_config;
}
