#include "laxbench/io.hpp"

#include <fstream>
#include <sstream>

namespace laxbench {

Json to_json(const Rational& q) { return to_string(q); }

Rational rational_from_json(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (j.is_number_float()) return parse_rational(j.dump());
  throw InputError("expected a rational number, got " + j.dump());
}

Json to_json(const Complex& z) { return Json::array({z.real(), z.imag()}); }

Json to_json(const DegreeProfile& p) {
  Json j;
  j["kind"] = p.kind_name();
  j["r"] = p.r;
  j["d"] = p.d;
  return j;
}

DegreeProfile profile_from_json(const Json& j) {
  try {
    const ProfileKind kind = parse_profile_kind(j.at("kind").get<std::string>());
    const int r = j.at("r").get<int>();
    const int d = j.at("d").get<int>();
    if (r < 1 || d < 0) throw InputError("profile needs r >= 1 and d >= 0");
    switch (kind) {
      case ProfileKind::beauville: return DegreeProfile::beauville(r, d);
      case ProfileKind::bullet: return DegreeProfile::bullet(r, d);
      case ProfileKind::bv: return DegreeProfile::bv(r, d);
      case ProfileKind::uniform: return DegreeProfile::uniform(r, d);
    }
  } catch (const Json::exception& e) {
    throw InputError(std::string("malformed profile: ") + e.what());
  }
  throw InputError("malformed profile");
}

Json to_json(const PolyMat<Rational>& a) {
  Json j;
  j["profile"] = to_json(a.profile());
  Json rows = Json::array();
  for (int i = 0; i < a.size(); ++i) {
    Json row = Json::array();
    for (int jj = 0; jj < a.size(); ++jj) {
      Json coeffs = Json::array();
      for (const auto& c : a(i, jj).coeffs()) coeffs.push_back(to_json(c));
      row.push_back(coeffs);
    }
    rows.push_back(row);
  }
  j["entries"] = rows;
  return j;
}

PolyMat<Rational> polymat_from_json(const Json& j) {
  try {
    const DegreeProfile p = profile_from_json(j.at("profile"));
    const Json& rows = j.at("entries");
    if (!rows.is_array() || static_cast<int>(rows.size()) != p.r) throw InputError("entries must be an r x r array");
    PolyMat<Rational> a(p);
    for (int i = 0; i < p.r; ++i) {
      const Json& row = rows.at(static_cast<std::size_t>(i));
      if (!row.is_array() || static_cast<int>(row.size()) != p.r) throw InputError("entries must be an r x r array");
      for (int jj = 0; jj < p.r; ++jj) {
        std::vector<Rational> coeffs;
        for (const auto& c : row.at(static_cast<std::size_t>(jj))) coeffs.push_back(rational_from_json(c));
        a.set(i, jj, Poly<Rational>(coeffs));  // set() enforces the profile bound
      }
    }
    return a;
  } catch (const Json::exception& e) {
    throw InputError(std::string("malformed matrix JSON: ") + e.what());
  }
}

Json to_json(const Mat<Rational>& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(to_json(m(i, k)));
    rows.push_back(row);
  }
  return rows;
}

Json to_json(const Phi& phi) { return to_json(phi.sigma); }

Json to_json(const std::vector<Rational>& v) {
  Json a = Json::array();
  for (const auto& q : v) a.push_back(to_json(q));
  return a;
}

std::string coord_name(const CoordIndex& c) {
  return "A" + std::to_string(c.i + 1) + std::to_string(c.j + 1) + ";" + std::to_string(c.k);
}

Json to_json(const LinearForm& lf, const CoordSet& cs) {
  Json terms = Json::object();
  for (const auto& [n, c] : lf.terms) terms[coord_name(cs[n])] = to_json(c);
  Json j;
  j["terms"] = terms;
  j["constant"] = to_json(lf.constant);
  return j;
}

Json to_json(const BracketTable& t) {
  Json j;
  j["profile"] = to_json(t.profile());
  j["phi"] = to_json(t.phi());
  Json entries = Json::array();
  for (int a = 0; a < t.size(); ++a)
    for (int b = a + 1; b < t.size(); ++b) {
      if (t(a, b).is_zero()) continue;
      Json e;
      e["a"] = coord_name(t.coords()[a]);
      e["b"] = coord_name(t.coords()[b]);
      e["linear_form"] = to_json(t(a, b), t.coords());
      entries.push_back(e);
    }
  j["entries"] = entries;
  return j;
}

Json to_json(const NormalForm<Rational>& nf) {
  Json j;
  switch (nf.target) {
    case NormalTarget::s_infty: j["target"] = "s_infty"; break;
    case NormalTarget::s_c: j["target"] = "s_c"; break;
    case NormalTarget::s_prime_infty: j["target"] = "s_prime_infty"; break;
  }
  j["S"] = to_json(nf.s);
  if (nf.target == NormalTarget::s_prime_infty) {
    j["gauge"] = {{"c", to_json(nf.c)}, {"b1", to_json(nf.b1)}, {"b0", to_json(nf.b0)}};
  } else {
    j["gauge"] = to_json(nf.gauge);
  }
  return j;
}

Json to_json(const Trajectory& tr) {
  Json j;
  j["system"] = chart_system_name(tr.system);
  j["d"] = tr.d;
  j["dt"] = tr.dt;
  j["steps"] = static_cast<int>(tr.times.size()) - 1;
  j["max_drift"] = tr.max_drift;
  j["max_off_chart_velocity"] = tr.max_off_chart;
  j["growth"] = tr.growth;
  Json chart = Json::array();
  for (const auto& c : chart_coords(tr.system, tr.d)) chart.push_back(coord_name(c));
  j["chart"] = chart;
  Json steps = Json::array();
  for (std::size_t n = 0; n < tr.times.size(); ++n) {
    Json s;
    s["t"] = tr.times[n];
    Json h = Json::array();
    for (const auto& z : tr.hamiltonians[n]) h.push_back(to_json(z));
    s["H2"] = h;
    Json st = Json::array();
    for (const auto& z : tr.states[n]) st.push_back(to_json(z));
    s["state"] = st;
    steps.push_back(s);
  }
  j["trajectory"] = steps;
  return j;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  out << text;
}

}  // namespace laxbench
