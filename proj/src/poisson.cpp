#include "laxbench/poisson.hpp"

#include <sstream>

namespace laxbench {

Phi parse_phi(const std::string& text, int d) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  if (s.empty()) throw InputError("empty phi specification");
  if (s.rfind("x^", 0) == 0) {
    int i = 0;
    try {
      std::size_t used = 0;
      i = std::stoi(s.substr(2), &used);
      if (used != s.size() - 2) throw InputError("bad phi basis element '" + text + "'");
    } catch (const std::logic_error&) {
      throw InputError("bad phi basis element '" + text + "'");
    }
    return Phi::monomial(d, i);
  }
  if (s == "x") return Phi::monomial(d, 1);
  std::vector<Rational> sigma;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) sigma.push_back(parse_rational(item));
  if (static_cast<int>(sigma.size()) > d + 3) throw InputError("phi list longer than d+3");
  return Phi(d, sigma);
}

BracketTable expand_tensor(const DegreeProfile& p, const Phi& phi) {
  BracketTable t(p, phi);
  const CoordSet& cs = t.coords();
  const int r = p.r;
  const Poly<Rational> ph = phi.poly();
  // Kernels K_p for every coefficient index in use.
  std::vector<BiPoly<Rational>> kernel;
  for (int q = 0; q <= p.max_bound(); ++q)
    kernel.push_back(divided_difference_kernel(Poly<Rational>::monomial(static_cast<std::size_t>(q)), ph));
  // Coefficient x^m y^n of T_ab, as a linear form.
  auto t_coeff = [&](int a, int b, int m, int n, const Rational& sign, LinearForm& lf) {
    for (int q = 0; q <= p.bound(a, b); ++q) {
      const Rational& c = kernel[q].coeff(static_cast<std::size_t>(m), static_cast<std::size_t>(n));
      if (!c.is_zero()) lf.add(cs.index(a, b, q), sign * c);
    }
  };
  for (int u = 0; u < cs.size(); ++u) {
    const auto& cu = cs[u];  // A_{ij;m}
    for (int v = 0; v < cs.size(); ++v) {
      const auto& cv = cs[v];  // A_{kl;n}
      LinearForm& lf = t(u, v);
      if (cu.i == cv.j) t_coeff(cv.i, cu.j, cu.k, cv.k, Rational(1), lf);
      if (cv.i == cu.j) t_coeff(cu.i, cv.j, cu.k, cv.k, Rational(-1), lf);
    }
  }
  (void)r;
  return t;
}

BracketTable beauville_tensor(int r, int d, const Phi& phi) {
  if (phi.d != d) throw InputError("phi was built for a different d");
  return expand_tensor(DegreeProfile::bullet(r, d), phi);
}

BracketTable bv_tensor(int r, int d, const Phi& phi) {
  if (phi.d != d) throw InputError("phi was built for a different d");
  return expand_tensor(DegreeProfile::bv(r, d), phi);
}

LinearForm jacobiator_generators(const BracketTable& t, int a, int b, int c) {
  LinearForm out;
  auto term = [&](int p, int q, int s) {
    // {x_s, {x_p, x_q}} = sum_e Pi_pq[e] Pi_se
    for (const auto& [e, coef] : t(p, q).terms)
      for (const auto& [f, c2] : t(s, e).terms) out.add(f, coef * c2);
  };
  term(b, c, a);
  term(c, a, b);
  term(a, b, c);
  return out;
}

JacobiScan jacobi_scan(const BracketTable& t, bool stop_at_first) {
  JacobiScan scan;
  const int n = t.size();
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      for (int c = b + 1; c < n; ++c) {
        ++scan.triples;
        LinearForm j = jacobiator_generators(t, a, b, c);
        if (j.is_zero()) continue;
        ++scan.violations;
        if (!scan.witness) {
          scan.witness = std::array<int, 3>{a, b, c};
          scan.witness_value = std::move(j);
        }
        if (stop_at_first) return scan;
      }
  return scan;
}

namespace {

MPoly<Rational> as_mpoly(const LinearForm& lf) {
  MPoly<Rational> p(lf.constant);
  for (const auto& [n, c] : lf.terms) p += MPoly<Rational>::variable(n, c);
  return p;
}

void check_coords(const MPoly<Rational>& f, const BracketTable& t) {
  if (f.max_variable() >= t.size()) throw InputError("observable uses coordinates outside the tensor's set");
}

}  // namespace

MPoly<Rational> bracket(const MPoly<Rational>& f, const MPoly<Rational>& g, const BracketTable& t) {
  check_coords(f, t);
  check_coords(g, t);
  const int n = t.size();
  std::vector<MPoly<Rational>> dg(static_cast<std::size_t>(n));
  for (int b = 0; b < n; ++b) dg[b] = g.derivative(b);
  MPoly<Rational> out;
  for (int a = 0; a < n; ++a) {
    const MPoly<Rational> da = f.derivative(a);
    if (da.is_zero()) continue;
    MPoly<Rational> inner;
    for (int b = 0; b < n; ++b) {
      if (dg[b].is_zero() || t(a, b).is_zero()) continue;
      inner += as_mpoly(t(a, b)) * dg[b];
    }
    out += da * inner;
  }
  return out;
}

MPoly<Rational> jacobiator(const MPoly<Rational>& f, const MPoly<Rational>& g, const MPoly<Rational>& h,
                           const BracketTable& t) {
  return bracket(f, bracket(g, h, t), t) + bracket(g, bracket(h, f, t), t) + bracket(h, bracket(f, g, t), t);
}

bool compatibility_check(System s, int r, int d, const Phi& phi1, const Phi& phi2, const Rational& c1,
                         const Rational& c2) {
  const BracketTable lhs = build_tensor(s, r, d, c1 * phi1 + c2 * phi2);
  const BracketTable rhs = combine(c1, build_tensor(s, r, d, phi1), c2, build_tensor(s, r, d, phi2));
  return lhs == rhs;
}

Observable spectral_hamiltonian(const DegreeProfile& p, int k, int j) {
  if (k < 1 || k > p.r) throw InputError("Hamiltonian index k out of range");
  const CoordSet cs(p);
  std::ostringstream name;
  name << "H" << k << "_" << j;
  return make_observable(name.str(), [cs, k, j](const auto& x) {
    using U = typename std::decay_t<decltype(x)>::value_type;
    const auto a = PolyMat<U>::from_coords(cs, x);
    return trace_power(a, k).coeff(static_cast<std::size_t>(j));
  });
}

}  // namespace laxbench
