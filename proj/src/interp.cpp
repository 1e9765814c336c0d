#include "laxbench/interp.hpp"

#include <sstream>

#include "laxbench/gauge.hpp"

namespace laxbench {

Nodes::Nodes(std::vector<Rational> points) : a(std::move(points)) {
  if (a.empty()) throw InputError("need at least one node");
  for (std::size_t i = 0; i < a.size(); ++i) {
    Rational w = 1;
    for (std::size_t j = 0; j < a.size(); ++j) {
      if (i == j) continue;
      if (a[i] == a[j]) throw InputError("interpolation nodes must be distinct");
      w *= a[i] - a[j];
    }
    c.push_back(Rational(1) / w);
  }
}

Poly<Rational> Nodes::phi() const {
  Poly<Rational> p = Poly<Rational>::constant(Rational(1));
  for (const auto& x : a) p = p * Poly<Rational>({-x, Rational(1)});
  return p;
}

Poly<Rational> Nodes::partial_product(std::size_t alpha) const {
  Poly<Rational> p = Poly<Rational>::constant(Rational(1));
  for (std::size_t b = 0; b < a.size(); ++b)
    if (b != alpha) p = p * Poly<Rational>({-a[b], Rational(1)});
  return p;
}

Nodes parse_nodes(const std::string& text) {
  std::vector<Rational> pts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) pts.push_back(parse_rational(item));
  return Nodes(pts);
}

std::vector<Mat<Rational>> lagrange_split(const PolyMat<Rational>& a, const Nodes& nodes) {
  if (a.profile().max_bound() + 1 > static_cast<int>(nodes.size()))
    throw InputError("need one node per coefficient (d+2 nodes for the enlarged space)");
  std::vector<Mat<Rational>> out;
  for (std::size_t n = 0; n < nodes.size(); ++n) out.push_back(Mat<Rational>(a.evaluate(nodes.a[n]) * nodes.c[n]));
  return out;
}

PolyMat<Rational> lagrange_join(const std::vector<Mat<Rational>>& blocks, const Nodes& nodes,
                                const DegreeProfile& profile) {
  if (blocks.size() != nodes.size()) throw InputError("one block per node expected");
  const int r = profile.r;
  PolyMat<Rational> out(DegreeProfile::uniform(r, static_cast<int>(nodes.size()) - 1));
  for (std::size_t n = 0; n < nodes.size(); ++n) {
    const Poly<Rational> l = nodes.partial_product(n);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) out.set(i, j, out(i, j) + l * blocks[n](i, j));
  }
  return out.with_profile(profile);
}

BracketTable canonical_pullback(int r, int d, const Nodes& nodes) {
  if (static_cast<int>(nodes.size()) != d + 2) throw InputError("need exactly d+2 nodes");
  const DegreeProfile p = DegreeProfile::bullet(r, d);
  const std::vector<Rational> sigma = nodes.phi().coeffs();
  BracketTable t(p, Phi(d, sigma));
  const CoordSet& cs = t.coords();
  const std::size_t n_nodes = nodes.size();
  std::vector<Poly<Rational>> l;
  for (std::size_t n = 0; n < n_nodes; ++n) l.push_back(nodes.partial_product(n));
  // block entry A^alpha_{ij} = c_alpha sum_p a_alpha^p A_{ij;p}
  auto block_entry = [&](LinearForm& lf, std::size_t alpha, int i, int j, const Rational& scale) {
    Rational pw = 1;
    for (int q = 0; q <= d + 1; ++q) {
      lf.add(cs.index(i, j, q), scale * nodes.c[alpha] * pw);
      pw *= nodes.a[alpha];
    }
  };
  for (int x = 0; x < cs.size(); ++x)
    for (int y = 0; y < cs.size(); ++y) {
      const CoordIndex& u = cs[x];
      const CoordIndex& v = cs[y];
      LinearForm lf;
      for (std::size_t alpha = 0; alpha < n_nodes; ++alpha) {
        const Rational w = l[alpha].coeff(static_cast<std::size_t>(u.k)) * l[alpha].coeff(static_cast<std::size_t>(v.k));
        if (w.is_zero()) continue;
        if (u.j == v.i) block_entry(lf, alpha, u.i, v.j, w);
        if (u.i == v.j) block_entry(lf, alpha, v.i, u.j, -w);
      }
      t(x, y) = lf;
    }
  return t;
}

PullbackReport canonical_pullback_check(int r, int d, const Nodes& nodes) {
  const BracketTable pulled = canonical_pullback(r, d, nodes);
  const BracketTable direct = beauville_tensor(r, d, pulled.phi());
  PullbackReport rep;
  for (int x = 0; x < pulled.size(); ++x)
    for (int y = 0; y < pulled.size(); ++y) {
      ++rep.entries;
      if (!(pulled(x, y) == direct(x, y))) {
        ++rep.mismatches;
        if (!rep.first_mismatch) rep.first_mismatch = {x, y};
      }
    }
  return rep;
}

PolyMat<Rational> GrElement::matrix() const {
  const int n = r();
  PolyMat<Rational> g(DegreeProfile::uniform(n, 1));
  g.at(0, 0, 0) = 1;
  for (int j = 1; j < n; ++j) {
    g.at(0, j, 0) = b0[static_cast<std::size_t>(j - 1)];
    g.at(0, j, 1) = b1[static_cast<std::size_t>(j - 1)];
    for (int i = 1; i < n; ++i) g.at(i, j, 0) = block(i - 1, j - 1);
  }
  return g;
}

PolyMat<Rational> GrElement::inverse_matrix() const {
  // [[1, b], [0, B]]^{-1} = [[1, -b B^{-1}], [0, B^{-1}]]
  const int n = r();
  const Mat<Rational> bi = inverse(block);
  PolyMat<Rational> g(DegreeProfile::uniform(n, 1));
  g.at(0, 0, 0) = 1;
  for (int j = 1; j < n; ++j) {
    Rational c0 = 0, c1 = 0;
    for (int m = 1; m < n; ++m) {
      c0 -= b0[static_cast<std::size_t>(m - 1)] * bi(m - 1, j - 1);
      c1 -= b1[static_cast<std::size_t>(m - 1)] * bi(m - 1, j - 1);
    }
    g.at(0, j, 0) = c0;
    g.at(0, j, 1) = c1;
    for (int i = 1; i < n; ++i) g.at(i, j, 0) = bi(i - 1, j - 1);
  }
  return g;
}

Mat<Rational> GrElement::at(const Rational& x) const { return matrix().evaluate(x); }

GrElement operator*(const GrElement& g, const GrElement& h) {
  // [[1, b], [0, B]] [[1, b'], [0, B']] = [[1, b' + b B'], [0, B B']]
  const int n = g.r() - 1;
  GrElement out{Mat<Rational>(g.block * h.block), h.b1, h.b0};
  for (int j = 0; j < n; ++j)
    for (int m = 0; m < n; ++m) {
      out.b1[static_cast<std::size_t>(j)] += g.b1[static_cast<std::size_t>(m)] * h.block(m, j);
      out.b0[static_cast<std::size_t>(j)] += g.b0[static_cast<std::size_t>(m)] * h.block(m, j);
    }
  return out;
}

GrElement random_gr_element(int r, RationalSampler& rs) {
  for (;;) {
    GrElement g{random_matrix(rs, r - 1, r - 1), {}, {}};
    if (determinant(g.block).is_zero()) continue;
    for (int j = 0; j < r - 1; ++j) {
      g.b1.push_back(rs());
      g.b0.push_back(rs());
    }
    return g;
  }
}

GrAction gr_action_bullet(const GrElement& g, const PolyMat<Rational>& a, const Phi& phi) {
  const int d = a.profile().d;
  if (a.profile().kind != ProfileKind::bullet) throw InputError("the extended action acts on the enlarged space");
  if (phi.degree() != d + 2) throw InputError("the extended action needs deg phi = d+2");
  const int r = a.size();
  const PolyMat<Rational> conj = g.inverse_matrix() * a * g.matrix();
  const Poly<Rational> ph = phi.poly();
  GrAction out{PolyMat<Rational>(a.profile()), PolyMat<Rational>(DegreeProfile::uniform(r, 1))};
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      const auto qr = divmod(conj(i, j), ph);
      out.remainder.set(i, j, qr.remainder);
      out.quotient.set(i, j, qr.quotient);
    }
  return out;
}

bool gr_action_is_poisson(const GrElement& g, const PolyMat<Rational>& a, const Phi& phi) {
  const BracketTable t = beauville_tensor(a.size(), a.profile().d, phi);
  const CoordSet& cs = t.coords();
  const auto x = a.flatten(cs);
  // the action is affine-linear in A; its Jacobian comes from one dual pass
  auto act = [&](const std::vector<DualQ>& v) {
    const auto av = PolyMat<DualQ>::from_coords(cs, v);
    const auto gm = convert_polymat<DualQ>(g.matrix());
    const auto gi = convert_polymat<DualQ>(g.inverse_matrix());
    const PolyMat<DualQ> conj = gi * av * gm;
    Poly<DualQ> ph(phi.d + 2);
    for (int k = 0; k <= phi.d + 2; ++k) ph[static_cast<std::size_t>(k)] = DualQ(phi[k]);
    PolyMat<DualQ> rem(cs.profile());
    for (int i = 0; i < a.size(); ++i)
      for (int j = 0; j < a.size(); ++j) rem.set(i, j, divmod(conj(i, j), ph).remainder);
    return rem.flatten(cs);
  };
  const Mat<Rational> jac = chart_jacobian(act, x);
  const auto y = gr_action_bullet(g, a, phi).remainder.flatten(cs);
  return Mat<Rational>(jac * t.evaluate(x) * jac.transpose()) == t.evaluate(y);
}

}  // namespace laxbench
