#include "laxbench/suites.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

#include "laxbench/flows.hpp"

namespace laxbench {

Backend parse_backend(const std::string& s) {
  if (s == "exact") return Backend::exact;
  if (s == "float") return Backend::floating;
  throw InputError("unknown backend '" + s + "' (exact|float)");
}

std::string backend_name(Backend b) { return b == Backend::exact ? "exact" : "float"; }

System parse_system(const std::string& s) {
  if (s == "beauville") return System::beauville;
  if (s == "bv") return System::bv;
  throw InputError("unknown system '" + s + "' (beauville|bv)");
}

std::string system_name(System s) { return s == System::beauville ? "beauville" : "bv"; }

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"tensor-axioms", "multi-ham", "casimirs", "gauge",
                                                 "r2-charts",     "appendix",  "flows"};
  return names;
}

void SuiteConfig::validate() const {
  const auto& names = suite_names();
  if (std::find(names.begin(), names.end(), suite) == names.end()) throw InputError("unknown suite '" + suite + "'");
  if (r != 2 && r != 3) throw InputError("r must be 2 or 3");
  if (d < 1 || d > 3) throw InputError("d must be 1, 2 or 3");
  if (points < 0) throw InputError("point count must be nonnegative");
  if (steps < 1) throw InputError("step count must be positive");
  if (!std::isfinite(t_end) || t_end < 0) throw InputError("integration time must be finite and nonnegative");
  if (phi_text) (void)phi();
  if (nodes_text) {
    const Nodes n = parse_nodes(*nodes_text);
    if (static_cast<int>(n.size()) != d + 2) throw InputError("need exactly d+2 nodes");
  }
  if (suite == "r2-charts" && r != 2) throw InputError("the chart suite is implemented for r = 2");
}

Phi SuiteConfig::phi() const {
  if (!phi_text) throw InputError("no phi given");
  return parse_phi(*phi_text, d);
}

Json SuiteConfig::to_json() const {
  Json j;
  j["suite"] = suite;
  j["system"] = system_name(system);
  j["r"] = r;
  j["d"] = d;
  j["phi"] = phi_text ? laxbench::to_json(phi()) : Json(nullptr);
  j["seed"] = seed;
  j["backend"] = backend_name(backend);
  j["points"] = points;
  j["nodes"] = nodes_text ? Json(*nodes_text) : Json(nullptr);
  j["c"] = c ? laxbench::to_json(*c) : Json("inf");
  j["y0"] = laxbench::to_json(y0);
  j["t"] = t_end;
  j["steps"] = steps;
  return j;
}

Mat<Rational> random_singular_regular(int r, RationalSampler& rs) {
  for (;;) {
    // companion of y^r + b_1 y^{r-1} + ... + b_{r-1} y: regular, with a zero root
    Mat<Rational> comp = zero_matrix<Rational>(r, r);
    for (int i = 1; i < r; ++i) comp(i, i - 1) = 1;
    for (int i = 0; i < r - 1; ++i) comp(0, i) = rs();
    const Mat<Rational> h = random_matrix(rs, r, r);
    if (determinant(h).is_zero()) continue;
    return Mat<Rational>(h * comp * inverse(h));
  }
}

PolyMat<Rational> random_m_infty_point(int r, int d, RationalSampler& rs) {
  for (;;) {
    PolyMat<Rational> a = random_polymat(rs, DegreeProfile::beauville(r, d));
    const Mat<Rational> top = random_singular_regular(r, rs);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) a.at(i, j, d) = top(i, j);
    if (m_infty_membership(a)) return a;
  }
}

PolyMat<Rational> random_m_c_point(int r, int d, const Rational& c, RationalSampler& rs) {
  for (;;) {
    PolyMat<Rational> a = random_polymat(rs, DegreeProfile::beauville(r, d));
    // shift the constant term so that A(c) is a prescribed singular regular matrix
    const Mat<Rational> target = random_singular_regular(r, rs);
    const Mat<Rational> now = a.evaluate(c);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) a.at(i, j, 0) += target(i, j) - now(i, j);
    if (m_membership(a, ExpansionPoint{c})) return a;
  }
}

std::vector<Rational> random_chart(ChartSystem sys, int d, RationalSampler& rs, const Rational& scale) {
  std::vector<Rational> out;
  for (std::size_t n = 0; n < chart_coords(sys, d).size(); ++n) out.push_back(rs.nonzero() * scale);
  return out;
}

Phi random_phi(int d, int deg, RationalSampler& rs) {
  std::vector<Rational> s;
  for (int i = 0; i <= deg; ++i) s.push_back(rs.nonzero());
  return Phi(d, s);
}

namespace {

std::string phi_label(const Phi& phi) {
  std::string out;
  for (int i = 0; i <= phi.d + 2; ++i) {
    if (i) out += ",";
    out += to_string(phi[i]);
  }
  return out;
}

std::string tag(const std::string& base, const std::string& suffix) { return base + " [" + suffix + "]"; }

std::uint64_t next_seed(RationalSampler& rs) { return rs.engine()(); }

Json index_witness(const std::vector<std::pair<int, int>>& kj) {
  Json a = Json::array();
  for (const auto& [k, j] : kj) a.push_back({k, j});
  return a;
}

Json jacobi_witness(const BracketTable& t, const JacobiScan& scan) {
  Json w;
  w["triples"] = scan.triples;
  w["violations"] = scan.violations;
  if (scan.witness) {
    const auto& tr = *scan.witness;
    w["triple"] = {coord_name(t.coords()[tr[0]]), coord_name(t.coords()[tr[1]]), coord_name(t.coords()[tr[2]])};
    w["jacobiator"] = to_json(scan.witness_value, t.coords());
  }
  return w;
}

// ---------------------------------------------------------------- tensor-axioms

void suite_tensor_axioms(const SuiteConfig& cfg, Report& rep, RationalSampler& rs) {
  const int r = cfg.r, d = cfg.d;
  std::vector<Phi> phis;
  if (cfg.phi_text) {
    phis.push_back(cfg.phi());
  } else {
    for (int i = 0; i <= d + 2; ++i) {
      Phi p = Phi::monomial(d, i);
      // past the truncation degree the failure concerns a general phi of that degree
      if (cfg.system == System::bv && i > d) p = p + Phi::monomial(d, 0);
      phis.push_back(p);
    }
  }
  for (const auto& phi : phis) {
    const BracketTable t = build_tensor(cfg.system, r, d, phi);
    const std::string lbl = "phi=" + phi_label(phi);
    rep.add(tag("antisymmetry", lbl), "skew-symmetry of the structure constants", t.antisymmetric());
    rep.add(tag("linear in coordinates", lbl), "brackets of coordinates are linear forms", t.linear());
    const JacobiScan scan = jacobi_scan(t);
    const std::string counts = std::to_string(scan.violations) + " of " + std::to_string(scan.triples) + " triples violate";
    if (cfg.system == System::beauville || phi.degree() <= d) {
      rep.add(tag("jacobi on generators", lbl), "jacobi identity of the pencil", scan.violations == 0, counts,
              scan.violations ? jacobi_witness(t, scan) : Json(nullptr));
    } else {
      // the truncated bracket is only Poisson on invariant functions here
      Json w = jacobi_witness(t, scan);
      rep.add(tag("jacobi fails on generators", lbl), "truncated bracket is not Poisson on the full ring",
              scan.violations > 0, counts, w);
    }
  }
  const int top = cfg.system == System::bv ? d : d + 2;
  const Phi p1 = random_phi(d, top, rs), p2 = random_phi(d, std::max(0, top - 1), rs);
  const Rational c1 = rs.nonzero(), c2 = rs.nonzero();
  rep.add("compatibility of the pencil", "tensor is linear in phi",
          compatibility_check(cfg.system, r, d, p1, p2, c1, c2),
          "c1=" + to_string(c1) + " c2=" + to_string(c2));
}

// ---------------------------------------------------------------- multi-ham

template <class T>
void multi_ham_point(const SuiteConfig& cfg, Report& rep, const PolyMat<Rational>& a0, const Phi& phi, int n) {
  const int r = cfg.r, d = cfg.d;
  const PolyMat<T> a = convert_polymat<T>(a0);
  const std::string pt = "point " + std::to_string(n);
  std::vector<std::pair<int, int>> bad;
  int checked = 0;
  for (int k = 1; k <= r; ++k)
    for (int j = 0; j <= k * d; ++j) {
      ++checked;
      if (!lemma_ham_y_check(a, k, j, phi, cfg.system).passed) bad.emplace_back(k, j);
    }
  const std::string anchor = cfg.system == System::beauville
                                 ? "hamiltonian field of a trace power equals a combination of Y fields"
                                 : "hamiltonian field of a trace power equals Y fields modulo gauge";
  Json w = nullptr;
  if (!bad.empty()) w = {{"point", to_json(a0)}, {"phi", to_json(phi)}, {"failing_k_j", index_witness(bad)}};
  rep.add(tag("trace-power fields", pt), anchor, bad.empty(), std::to_string(checked) + " (k,j) pairs", w);

  bad.clear();
  checked = 0;
  for (int k = 1; k <= r - 1; ++k)
    for (int j = 0; j <= k * d - 2; ++j) {
      ++checked;
      if (!multi_hamiltonian_check(a, k, j, cfg.system).passed) bad.emplace_back(k, j);
    }
  w = nullptr;
  if (!bad.empty()) w = {{"point", to_json(a0)}, {"failing_k_j", index_witness(bad)}};
  rep.add(tag("multi-hamiltonian ladder", pt), "one field, hamiltonian for every basis structure", bad.empty(),
          std::to_string(checked) + " admissible (k,j), all basis structures", w);
}

void suite_multi_ham(const SuiteConfig& cfg, Report& rep, RationalSampler& rs) {
  if (cfg.points == 0) {
    rep.skip("trace-power fields", "hamiltonian field of a trace power", "no points requested");
    return;
  }
  for (int n = 0; n < cfg.points; ++n) {
    const auto a = random_point(point_profile(cfg.system, cfg.r, cfg.d), next_seed(rs)).matrix;
    const Phi phi = cfg.phi_text ? cfg.phi() : random_phi(cfg.d, cfg.d + 2, rs);
    if (cfg.backend == Backend::exact)
      multi_ham_point<Rational>(cfg, rep, a, phi, n);
    else
      multi_ham_point<Complex>(cfg, rep, a, phi, n);
  }
}

// ---------------------------------------------------------------- casimirs

template <class T>
void casimir_point(const SuiteConfig& cfg, Report& rep, const std::vector<BracketTable>& tables,
                   const PolyMat<Rational>& a0, int n) {
  const int r = cfg.r, d = cfg.d;
  const DegreeProfile tp = tensor_profile(cfg.system, r, d);
  const CoordSet cs(tp);
  const PolyMat<T> a = convert_polymat<T>(a0).with_profile(tp);
  const auto x = a.flatten(cs);
  const OrbitModel orbit = orbit_for(cfg.system, r);
  std::vector<std::vector<std::vector<T>>> grads;
  for (int k = 1; k <= r; ++k) grads.push_back(hamiltonian_gradients(tp, k, x));
  for (int i = 0; i <= d + 2; ++i) {
    std::vector<std::pair<int, int>> bad;
    int zero = 0, tangent = 0;
    for (int k = 1; k <= r; ++k)
      for (int j = 0; j <= k * d; ++j) {
        const bool want_zero = j <= i - 1;
        const bool want_tangent = j >= d * (k - 1) + i - 1;
        if (!want_zero && !want_tangent) continue;
        const auto vf = hamiltonian_vf_from_gradient(tables[static_cast<std::size_t>(i)],
                                                     grads[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(j)], x);
        const bool is_zero = std::all_of(vf.begin(), vf.end(), [](const T& v) { return value_is_zero(v); });
        bool ok = is_zero;
        // on the mixed profile the bracket lives on invariants: zero means zero modulo gauge
        if (!ok && (!want_zero || cfg.system == System::bv)) ok = orbit_decompose(vf, a, orbit).orbit_tangent;
        if (!ok) bad.emplace_back(k, j);
        else if (is_zero) ++zero;
        else ++tangent;
      }
    Json w = nullptr;
    if (!bad.empty()) w = {{"point", to_json(a0)}, {"structure", i}, {"failing_k_j", index_witness(bad)}};
    rep.add(tag("casimir inventory", "x^" + std::to_string(i) + ", point " + std::to_string(n)),
            "low trace-power coefficients vanish, high ones are gauge motions", bad.empty(),
            std::to_string(zero) + " zero fields, " + std::to_string(tangent) + " gauge-tangent fields", w);
  }
}

// Jacobiator on triples of gauge-invariant functions: the normal-form chart
// coordinates of the r = 2 mixed profile together with the trace powers.
void invariant_jacobi(const SuiteConfig& cfg, Report& rep, RationalSampler& rs, const Phi& phi) {
  const int d = cfg.d;
  const std::string anchor = "truncated bracket is Poisson on gauge invariants";
  const std::string lbl = "phi=" + phi_label(phi);
  if (cfg.r != 2 || d < 2) {
    rep.skip(tag("invariant jacobiator", lbl), anchor, "normal-form coordinates exist for r = 2, d >= 2 only");
    return;
  }
  const BracketTable t = bv_tensor(2, d, phi);
  const CoordSet& cs = t.coords();
  for (int n = 0; n < cfg.points; ++n) {
    PolyMat<Rational> a;
    do {
      a = random_point(cs.profile(), next_seed(rs)).matrix;
    } while (a.coeff(1, 0, d - 1).is_zero());
    const auto x = a.flatten(cs);
    std::vector<std::vector<Rational>> grads;
    const Mat<Rational> jac = chart_jacobian([d](const auto& v) { return s_prime_infty_chart_map(d, v); }, x);
    for (Eigen::Index row = 0; row < jac.rows(); ++row) {
      std::vector<Rational> g(x.size());
      for (std::size_t c = 0; c < x.size(); ++c) g[c] = jac(row, static_cast<Eigen::Index>(c));
      grads.push_back(g);
    }
    for (int k = 1; k <= 2; ++k)
      for (auto& g : hamiltonian_gradients(cs.profile(), k, x)) grads.push_back(g);
    const Mat<Rational> pi = t.evaluate(x);
    long triples = 0, bad = 0;
    std::optional<std::array<std::size_t, 3>> first;
    for (std::size_t p = 0; p < grads.size(); ++p)
      for (std::size_t q = p + 1; q < grads.size(); ++q)
        for (std::size_t s = q + 1; s < grads.size(); ++s) {
          ++triples;
          if (!jacobiator_from_gradients(t, pi, grads[p], grads[q], grads[s]).is_zero()) {
            ++bad;
            if (!first) first = {p, q, s};
          }
        }
    Json w = nullptr;
    if (bad) w = {{"point", to_json(a)}, {"phi", to_json(phi)}, {"triple", {(*first)[0], (*first)[1], (*first)[2]}}};
    rep.add(tag("invariant jacobiator", lbl + ", point " + std::to_string(n)), anchor, bad == 0,
            std::to_string(triples) + " triples of " + std::to_string(grads.size()) + " invariants", w);
  }
}

void suite_casimirs(const SuiteConfig& cfg, Report& rep, RationalSampler& rs) {
  const int r = cfg.r, d = cfg.d;
  std::vector<BracketTable> tables;
  for (int i = 0; i <= d + 2; ++i) tables.push_back(build_tensor(cfg.system, r, d, Phi::monomial(d, i)));
  if (cfg.points == 0) rep.skip("casimir inventory", "trace-power casimirs", "no points requested");
  for (int n = 0; n < cfg.points; ++n) {
    const auto a = random_point(point_profile(cfg.system, r, d), next_seed(rs)).matrix;
    if (cfg.backend == Backend::exact)
      casimir_point<Rational>(cfg, rep, tables, a, n);
    else
      casimir_point<Complex>(cfg, rep, tables, a, n);
  }
  if (cfg.system != System::bv) return;

  // a bare monomial keeps the truncation graded and shows no violation; x^{d+1} + 1 does
  const Phi phi = cfg.phi_text ? cfg.phi() : Phi::monomial(d, d + 1) + Phi::monomial(d, 0);
  const BracketTable t = bv_tensor(r, d, phi);
  const JacobiScan scan = jacobi_scan(t);
  const std::string lbl = "phi=" + phi_label(phi);
  const std::string counts = std::to_string(scan.violations) + " of " + std::to_string(scan.triples) + " triples violate";
  if (phi.degree() <= d) {
    rep.add(tag("jacobi on generators", lbl), "truncated bracket is Poisson for deg phi <= d", scan.violations == 0,
            counts, scan.violations ? jacobi_witness(t, scan) : Json(nullptr));
  } else {
    rep.add(tag("jacobi fails on generators", lbl), "truncated bracket is not Poisson on the full ring",
            scan.violations > 0, counts, jacobi_witness(t, scan));
  }
  invariant_jacobi(cfg, rep, rs, phi);
}

// ---------------------------------------------------------------- gauge

void worked_example(Report& rep) {
  PolyMat<Rational> a(DegreeProfile::beauville(2, 1));
  a.at(0, 0, 1) = 1;
  a.at(0, 1, 1) = 1;
  a.at(0, 1, 0) = 1;
  a.at(1, 0, 1) = 1;
  a.at(1, 1, 1) = 1;
  PolyMat<Rational> s(DegreeProfile::beauville(2, 1));
  s.at(0, 0, 1) = 2;
  s.at(0, 1, 0) = 1;
  s.at(1, 0, 1) = 1;
  Mat<Rational> g(2, 2);
  g << -1, 1, 0, -1;
  const auto nf = normalize_beauville(a);
  Json w = nullptr;
  const bool ok = nf.s == s && nf.gauge == g;
  if (!ok) w = to_json(nf);
  rep.add("worked 2x2 example", "normal form of [[x, x+1], [x, x]]", ok, "", w);
}

void suite_gauge(const SuiteConfig& cfg, Report& rep, RationalSampler& rs) {
  const int r = cfg.r, d = cfg.d;
  worked_example(rep);

  int lemma_bad = 0;
  for (int n = 0; n < std::max(cfg.points, 1) * 10; ++n) {
    const Mat<Rational> m = random_singular_regular(r, rs);
    const Mat<Rational> x = xi(m, r - 1);
    if (matrix_rank(x) != 1 || !is_zero_matrix(Mat<Rational>(m * x)) || !is_zero_matrix(Mat<Rational>(x * m)))
      ++lemma_bad;
  }
  rep.add("rank-one annihilator", "for singular regular A the top xi has rank one and kills A", lemma_bad == 0,
          std::to_string(std::max(cfg.points, 1) * 10) + " matrices");

  if (cfg.system == System::beauville) {
    const ExpansionPoint at{cfg.c};
    const std::string where = cfg.c ? "c=" + to_string(*cfg.c) : "c=inf";
    for (int n = 0; n < cfg.points; ++n) {
      const auto a = cfg.c ? random_m_c_point(r, d, *cfg.c, rs) : random_m_infty_point(r, d, rs);
      const std::string pt = where + ", point " + std::to_string(n);
      NormalForm<Rational> nf;
      try {
        nf = normalize_beauville(a, at);
      } catch (const std::exception& e) {
        rep.add(tag("normal form", pt), "representatives of the regular locus", false, e.what(), to_json(a));
        continue;
      }
      const bool back = conjugate_constant(nf.gauge, nf.s, inverse(nf.gauge)).with_profile(a.profile()) == a;
      const bool member = m_membership(nf.s, at);
      rep.add(tag("normal form", pt), "representatives of the regular locus", back && member,
              back ? (member ? "" : "normal form left the locus") : "g S g^-1 != A",
              back && member ? Json(nullptr) : Json{{"point", to_json(a)}, {"normal_form", to_json(nf)}});
      int differ = 0;
      for (int h_n = 0; h_n < 10; ++h_n) {
        Mat<Rational> h = random_matrix(rs, r, r);
        while (determinant(h).is_zero()) h = random_matrix(rs, r, r);
        const auto moved = conjugate_constant(h, a, inverse(h)).with_profile(a.profile());
        if (!(normalize_beauville(moved, at).s == nf.s)) ++differ;
      }
      rep.add(tag("gauge invariance", pt), "normal form is constant on conjugation orbits", differ == 0,
              std::to_string(differ) + " of 10 conjugates differ", differ ? to_json(a) : Json(nullptr));
      const auto again = normalize_beauville(nf.s, at);
      const bool scalar = again.s == nf.s && again.gauge(0, 0) != 0 &&
                          again.gauge == Mat<Rational>(identity_matrix<Rational>(r) * again.gauge(0, 0));
      rep.add(tag("idempotent", pt), "normal forms are fixed up to scalar gauge", scalar);
    }
    return;
  }

  const std::string anchor = "mixed-profile normal form of size two";
  if (r != 2 || d < 2) {
    rep.skip("mixed normal form", anchor, "implemented for r = 2 and d >= 2");
    return;
  }
  for (int n = 0; n < cfg.points; ++n) {
    const std::string pt = "point " + std::to_string(n);
    const auto s = s_prime_infty_point(d, random_chart(ChartSystem::s_prime_infty, d, rs));
    const auto fixed = normalize_bv_r2(s);
    const bool identity = fixed.s == s && fixed.c == 1 && fixed.b1 == 0 && fixed.b0 == 0;
    rep.add(tag("normal form is fixed", pt), anchor, identity, "", identity ? Json(nullptr) : to_json(s));
    Poly<Rational> b(1);
    b[0] = rs();
    b[1] = rs();
    const Rational c = rs.nonzero();
    const auto a = gr_conjugate_r2(s, b, c).with_profile(s.profile());
    const auto nf = normalize_bv_r2(a);
    // A = g S g^-1 with g^-1 = [[1, -b/c], [0, 1/c]]
    const Rational ic = Rational(1) / nf.c;
    const auto rebuilt = gr_conjugate_r2(nf.s, nf.gauge_poly(0, 1) * (-ic), ic).with_profile(a.profile());
    const bool ok = nf.s == s && rebuilt == a;
    rep.add(tag("gauge invariance", pt), anchor, ok, "", ok ? Json(nullptr) : Json{{"point", to_json(a)}});
  }
}

// ---------------------------------------------------------------- r2-charts

int chart_index(const std::vector<CoordIndex>& chart, int i, int j, int k) {
  for (std::size_t n = 0; n < chart.size(); ++n)
    if (chart[n].i == i && chart[n].j == j && chart[n].k == k) return static_cast<int>(n);
  throw InternalError("chart coordinate missing");
}

bool row_is_zero(const Mat<Rational>& m, int row) {
  for (Eigen::Index c = 0; c < m.cols(); ++c)
    if (!m(row, c).is_zero()) return false;
  return true;
}

void suite_r2_charts(const SuiteConfig& cfg, Report& rep, RationalSampler& rs) {
  const int d = cfg.d;
  const std::optional<Phi> user = cfg.phi_text ? std::optional<Phi>(cfg.phi()) : std::nullopt;

  // first chart
  const std::string a1 = "r-matrix bracket on the first chart equals the ambient bracket";
  if (user && user->degree() > d + 1) {
    rep.skip("first chart bracket", a1, "phi must have degree <= d+1 on this chart");
  } else {
    for (int n = 0; n < cfg.points; ++n) {
      const auto s = s_infty_point(d, random_chart(ChartSystem::s_infty, d, rs));
      Mat<Rational> h = random_matrix(rs, 2, 2);
      while (determinant(h).is_zero()) h = random_matrix(rs, 2, 2);
      const auto amb = conjugate_constant(h, s, inverse(h)).with_profile(s.profile());
      const Phi phi = user ? *user : random_phi(d, d + 1, rs);
      const auto cr = induced_bracket_crosscheck(System::beauville, amb, phi);
      Json w = nullptr;
      if (!cr.passed()) w = {{"point", to_json(amb)}, {"phi", to_json(phi)}, {"entry", {cr.first_mismatch->first, cr.first_mismatch->second}}};
      rep.add(tag("first chart bracket", "point " + std::to_string(n)), a1, cr.passed(),
              std::to_string(cr.mismatches) + " of " + std::to_string(cr.pairs) + " entries differ", w);

      const Mat<Rational> pb = first_chart_bracket(s, phi);
      const auto rank = rank_numeric(convert_matrix<Complex>(pb));
      const int want = 2 * (d - 1);
      rep.add(tag("leaf dimension", "point " + std::to_string(n)), "symplectic leaves of the first chart have dimension 2g",
              rank == want, "numeric rank " + std::to_string(rank) + ", expected " + std::to_string(want),
              rank == want ? Json(nullptr) : Json{{"point", to_json(s)}, {"phi", to_json(phi)}});
    }
  }

  // Mumford slice: traceless, u_{d-1} = 1; with sigma_{d+1} = 0 the coordinate u_{d-1} is a Casimir
  const auto c1 = s_infty_chart(d);
  const int iu = chart_index(c1, 0, 1, d - 1);
  int mum_bad = 0, contrast_nonzero = 0;
  for (int n = 0; n < std::max(cfg.points, 1); ++n) {
    auto s = s_infty_point(d, random_chart(ChartSystem::s_infty, d, rs));
    s.at(0, 0, d) = 0;
    if (d >= 1) s.at(0, 0, d - 1) = 0;
    for (int k = 0; k <= d - 2; ++k) s.at(1, 1, k) = -s.at(0, 0, k);
    s.at(0, 1, d - 1) = 1;
    if (!mumford_member(s)) ++mum_bad;
    const Phi low = random_phi(d, d, rs);
    if (!row_is_zero(first_chart_bracket(s, low), iu)) ++mum_bad;
    if (!row_is_zero(first_chart_bracket(s, low + Phi::monomial(d, d + 1)), iu)) ++contrast_nonzero;
  }
  rep.add("first reduction casimir", "leading coefficient is a Casimir on the traceless slice when sigma_{d+1} = 0",
          mum_bad == 0, std::to_string(mum_bad) + " failures");
  if (d < 2)  // genus zero: the slice has no room for a nonzero bracket
    rep.skip("first reduction needs sigma_{d+1} = 0", "the Casimir property is not automatic", "the slice is a point for d = 1");
  else
    rep.add("first reduction needs sigma_{d+1} = 0", "the Casimir property is not automatic", contrast_nonzero > 0,
            std::to_string(contrast_nonzero) + " points with a nonzero bracket once sigma_{d+1} != 0");

  // second chart
  const std::string a2 = "r-matrix bracket on the second chart equals the ambient bracket";
  if (d < 3) {
    rep.skip("second chart bracket", a2, "the printed second-chart bracket needs d >= 3");
    rep.skip("second reduction casimir", a2, "the printed second-chart bracket needs d >= 3");
    return;
  }
  for (int n = 0; n < cfg.points; ++n) {
    const auto s = s_prime_infty_point(d, random_chart(ChartSystem::s_prime_infty, d, rs));
    Poly<Rational> b(1);
    b[0] = rs();
    b[1] = rs();
    const auto amb = gr_conjugate_r2(s, b, rs.nonzero()).with_profile(s.profile());
    const Phi phi = user ? *user : random_phi(d, d + 2, rs);
    const auto cr = induced_bracket_crosscheck(System::bv, amb, phi);
    Json w = nullptr;
    if (!cr.passed()) w = {{"point", to_json(amb)}, {"phi", to_json(phi)}, {"entry", {cr.first_mismatch->first, cr.first_mismatch->second}}};
    rep.add(tag("second chart bracket", "point " + std::to_string(n)), a2, cr.passed(),
            std::to_string(cr.mismatches) + " of " + std::to_string(cr.pairs) + " entries differ", w);
  }
  const auto c2 = s_prime_infty_chart(d);
  const int iw = chart_index(c2, 0, 1, d + 1);
  int even_bad = 0, even_contrast = 0;
  for (int n = 0; n < std::max(cfg.points, 1); ++n) {
    auto s = s_prime_infty_point(d, random_chart(ChartSystem::s_prime_infty, d, rs));
    s.at(0, 1, d + 1) = 1;
    for (int k = 0; k <= d; ++k) s.at(0, 0, k) = k <= d - 2 ? Rational(-s.at(1, 1, k)) : Rational(0);
    if (!even_mumford_member(s)) ++even_bad;
    const Phi low = random_phi(d, d + 1, rs);
    if (!row_is_zero(second_chart_bracket(s, low), iw)) ++even_bad;
    if (!row_is_zero(second_chart_bracket(s, low + Phi::monomial(d, d + 2)), iw)) ++even_contrast;
  }
  rep.add("second reduction casimir", "top coefficient is a Casimir on the traceless slice when sigma_{d+2} = 0",
          even_bad == 0, std::to_string(even_bad) + " failures");
  rep.add("second reduction needs sigma_{d+2} = 0", "the Casimir property is not automatic", even_contrast > 0,
          std::to_string(even_contrast) + " points with a nonzero bracket once sigma_{d+2} != 0");
}

// ---------------------------------------------------------------- appendix

Nodes random_nodes(int count, RationalSampler& rs) {
  for (;;) {
    std::vector<Rational> pts;
    for (int i = 0; i < count; ++i) pts.push_back(rs());
    try {
      return Nodes(pts);
    } catch (const InputError&) {
    }
  }
}

void suite_appendix(const SuiteConfig& cfg, Report& rep, RationalSampler& rs) {
  const int r = cfg.r, d = cfg.d;
  const Nodes nodes = cfg.nodes_text ? parse_nodes(*cfg.nodes_text) : random_nodes(d + 2, rs);
  std::string nl;
  for (std::size_t n = 0; n < nodes.size(); ++n) nl += (n ? "," : "") + to_string(nodes.a[n]);
  const auto pb = canonical_pullback_check(r, d, nodes);
  Json w = nullptr;
  if (!pb.passed())
    w = {{"nodes", to_json(nodes.a)}, {"entry", {pb.first_mismatch->first, pb.first_mismatch->second}}};
  rep.add(tag("canonical pullback", "nodes " + nl), "node-wise matrix brackets pull back to the pencil", pb.passed(),
          std::to_string(pb.mismatches) + " of " + std::to_string(pb.entries) + " entries differ", w);

  const Phi phi(d, nodes.phi().coeffs());
  const DegreeProfile p = DegreeProfile::bullet(r, d);
  for (int n = 0; n < cfg.points; ++n) {
    const std::string pt = "point " + std::to_string(n);
    const auto a = random_polymat(rs, p);
    const auto back = lagrange_join(lagrange_split(a, nodes), nodes, p);
    rep.add(tag("split and join", pt), "interpolation round trip", back == a, "", back == a ? Json(nullptr) : to_json(a));

    const GrElement g = random_gr_element(r, rs), h = random_gr_element(r, rs);
    const auto ga = gr_action_bullet(g, a, phi);
    const auto composed = gr_action_bullet(h, ga.remainder, phi).remainder;
    const bool law = composed == gr_action_bullet(g * h, a, phi).remainder;
    rep.add(tag("action law", pt), "acting by g then h equals acting by gh", law, "", law ? Json(nullptr) : to_json(a));

    const auto split_after = lagrange_split(ga.remainder, nodes);
    const auto split_before = lagrange_split(a, nodes);
    bool compatible = true;
    for (std::size_t al = 0; al < nodes.size(); ++al) {
      const Mat<Rational> gv = g.at(nodes.a[al]);
      if (!(split_after[al] == Mat<Rational>(inverse(gv) * split_before[al] * gv))) compatible = false;
    }
    rep.add(tag("node-wise conjugation", pt), "the action is conjugation at every root of phi", compatible, "",
            compatible ? Json(nullptr) : to_json(a));

    GrElement k = g;
    std::fill(k.b1.begin(), k.b1.end(), Rational(0));
    std::fill(k.b0.begin(), k.b0.end(), Rational(0));
    const auto kc = gr_action_bullet(k, a, phi);
    const bool constant = kc.quotient.fits(DegreeProfile::uniform(r, 0)) &&
                          kc.quotient == PolyMat<Rational>(kc.quotient.profile());
    rep.add(tag("constant gauge", pt), "constant elements need no reduction", constant);

    const bool poisson = gr_action_is_poisson(g, a, phi);
    rep.add(tag("action is Poisson", pt), "the extended action preserves the pencil", poisson, "",
            poisson ? Json(nullptr) : to_json(a));
  }
}

// ---------------------------------------------------------------- flows

bool trajectory_finite(const Trajectory& tr) {
  for (const auto& s : tr.states)
    for (const auto& z : s)
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  return std::isfinite(tr.max_drift);
}

void suite_flows(const SuiteConfig& cfg, Report& rep, RationalSampler& rs) {
  const int r = cfg.r, d = cfg.d;
  const DegreeProfile pp = point_profile(cfg.system, r, d);
  const OrbitModel orbit = orbit_for(cfg.system, r);
  for (int n = 0; n < cfg.points; ++n) {
    const std::string pt = "point " + std::to_string(n);
    const auto a = random_point(pp, next_seed(rs)).matrix;
    bool bounds = true;
    for (int k = 1; k <= r - 1; ++k) {
      try {
        for (const auto& y : y_fields(a, k)) {
          if (!y.fits(pp)) bounds = false;
          // on the Beauville space the fields lose one degree
          if (cfg.system == System::beauville && !is_zero_matrix(y.coefficient(d))) bounds = false;
        }
      } catch (const std::exception&) {
        bounds = false;
      }
    }
    rep.add(tag("Y field degrees", pt), "Y fields are tangent to the phase space", bounds, "",
            bounds ? Json(nullptr) : to_json(a));

    const int rank = y_span_rank(a, cfg.system), g = genus(r, d);
    rep.add(tag("flow span", pt), "Y fields span a g-dimensional space modulo gauge", rank == g,
            "rank " + std::to_string(rank) + ", genus " + std::to_string(g),
            rank == g ? Json(nullptr) : to_json(a));

    if (cfg.system == System::beauville) {
      bool tangent = true;
      for (int k = 1; k <= r - 1; ++k) {
        const auto ys = y_fields(a, k);
        if (!orbit_decompose(ys.back(), a, orbit).orbit_tangent) tangent = false;
      }
      rep.add(tag("last Y field is a gauge motion", pt), "top Y field is tangent to conjugation orbits", tangent);
    }
  }

  const std::string anchor = "lax form of the flows on the size-two normal forms";
  if (r != 2) {
    rep.skip("lax flow", anchor, "lax forms are given for r = 2");
    return;
  }
  const ChartSystem sys = cfg.system == System::beauville ? ChartSystem::s_infty : ChartSystem::s_prime_infty;
  if (sys == ChartSystem::s_prime_infty && d < 2) {
    rep.skip("lax flow", anchor, "the second chart needs d >= 2");
    return;
  }
  const std::string cname = chart_system_name(sys);
  for (int n = 0; n < cfg.points; ++n) {
    const auto s = chart_point(sys, d, random_chart(sys, d, rs, make_rational(1, 4)));
    const auto lc = lax_field_consistency(sys, s, cfg.y0);
    const bool ok = lc.exact_match && lc.off_chart == 0.0 && lc.float_error <= 1e-10;
    std::ostringstream det;
    det << "float error " << lc.float_error;
    rep.add(tag("lax velocity", cname + ", point " + std::to_string(n)), anchor, ok, det.str(),
            ok ? Json(nullptr) : Json{{"point", to_json(s)}, {"velocity", to_json(lc.velocity)}, {"from_fields", to_json(lc.from_fields)}});
  }
  // one long run. Chart coordinates are meromorphic in t, so a sample whose
  // trajectory heads for a pole (grows past 4x its start) is replaced
  constexpr double max_growth = 4.0;
  int attempts = 0;
  PolyMat<Rational> s0;
  Trajectory tr;
  do {
    ++attempts;
    s0 = chart_point(sys, d, random_chart(sys, d, rs, make_rational(1, 4)));
    tr = lax_integrate(sys, s0, cfg.y0, cfg.t_end, cfg.steps);
  } while ((!trajectory_finite(tr) || tr.growth > max_growth) && attempts < 20);
  std::ostringstream det;
  det << "max |dH| " << tr.max_drift << " over " << cfg.steps << " steps, growth " << tr.growth << ", "
      << attempts - 1 << " sample(s) rejected";
  const bool ok = trajectory_finite(tr) && tr.growth <= max_growth && tr.max_drift <= 1e-8;
  rep.add(tag("conservation", cname), "trace powers are conserved by the lax flow", ok, det.str(),
          ok ? Json(nullptr) : Json{{"initial", to_json(s0)}, {"max_drift", tr.max_drift}, {"growth", tr.growth}});
}

}  // namespace

Report run_suite(const SuiteConfig& cfg) {
  cfg.validate();
  const auto start = std::chrono::steady_clock::now();
  Report rep;
  rep.suite = cfg.suite;
  rep.config = cfg.to_json();
  RationalSampler rs(cfg.seed);
  if (cfg.suite == "tensor-axioms") suite_tensor_axioms(cfg, rep, rs);
  else if (cfg.suite == "multi-ham") suite_multi_ham(cfg, rep, rs);
  else if (cfg.suite == "casimirs") suite_casimirs(cfg, rep, rs);
  else if (cfg.suite == "gauge") suite_gauge(cfg, rep, rs);
  else if (cfg.suite == "r2-charts") suite_r2_charts(cfg, rep, rs);
  else if (cfg.suite == "appendix") suite_appendix(cfg, rep, rs);
  else if (cfg.suite == "flows") suite_flows(cfg, rep, rs);
  rep.runtime_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

}  // namespace laxbench
