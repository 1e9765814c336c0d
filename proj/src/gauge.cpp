#include "laxbench/gauge.hpp"

#include <array>

namespace laxbench {

namespace {

using Q = Rational;
using Bi = BiPoly<Q>;
// 4x4 matrix over Q[x,y]; row (i,k) -> 2i+k, column (j,l) -> 2j+l.
using Tensor = std::array<Bi, 16>;
using Mat2 = std::array<Bi, 4>;

Bi constant(const Q& c) {
  Bi b(0, 0);
  b(std::size_t{0}, std::size_t{0}) = c;
  return b;
}
Bi in_x(const Poly<Q>& p) { return Bi::outer(p, Poly<Q>::constant(Q(1))); }
Bi in_y(const Poly<Q>& p) { return Bi::outer(Poly<Q>::constant(Q(1)), p); }
Bi x_minus_y() {
  Bi b(1, 1);
  b(std::size_t{1}, std::size_t{0}) = 1;
  b(std::size_t{0}, std::size_t{1}) = -1;
  return b;
}

Tensor zero_tensor() {
  Tensor t;
  t.fill(Bi(0, 0));
  return t;
}

Tensor kron(const Mat2& a, const Mat2& b) {
  Tensor t;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) t[(2 * i + k) * 4 + 2 * j + l] = a[2 * i + j] * b[2 * k + l];
  return t;
}

Tensor mul(const Tensor& a, const Tensor& b) {
  Tensor t = zero_tensor();
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c)
      for (int m = 0; m < 4; ++m) {
        if (a[r * 4 + m].is_zero() || b[m * 4 + c].is_zero()) continue;
        t[r * 4 + c] += a[r * 4 + m] * b[m * 4 + c];
      }
  return t;
}

Tensor add(const Tensor& a, const Tensor& b, const Q& sb = Q(1)) {
  Tensor t = a;
  for (int n = 0; n < 16; ++n) t[n] += b[n] * sb;
  return t;
}

Tensor scale(const Tensor& a, const Bi& s) {
  Tensor t;
  for (int n = 0; n < 16; ++n) t[n] = a[n] * s;
  return t;
}

Tensor commutator(const Tensor& a, const Tensor& b) { return add(mul(a, b), mul(b, a), Q(-1)); }

Tensor swap_vars(const Tensor& a) {
  Tensor t;
  for (int n = 0; n < 16; ++n) t[n] = a[n].swapped();
  return t;
}

Tensor permutation() {
  Tensor t = zero_tensor();
  for (int i = 0; i < 2; ++i)
    for (int k = 0; k < 2; ++k) t[(2 * i + k) * 4 + 2 * k + i] = constant(Q(1));
  return t;
}

Mat2 identity2() { return {constant(Q(1)), Bi(0, 0), Bi(0, 0), constant(Q(1))}; }

/// P X(y,x) P, the barred partner.
Tensor barred(const Tensor& a) {
  const Tensor p = permutation();
  return mul(mul(p, swap_vars(a)), p);
}

/// Assembles the right-hand side from (x-y) r(x,y) and the polynomial K and
/// reads the bracket matrix over a chart.
Mat<Q> assemble(const PolyMat<Q>& s, const Phi& phi, const Tensor& r_scaled, const Tensor& k,
                const std::vector<CoordIndex>& chart) {
  Mat2 sx, sy;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      sx[2 * i + j] = in_x(s(i, j));
      sy[2 * i + j] = in_y(s(i, j));
    }
  const Tensor s_left = kron(sx, identity2());
  const Tensor s_right = kron(identity2(), sy);
  // (x-y) rbar(x,y) = -P R(y,x) P where R = (x-y) r.
  const Tensor rbar_scaled = scale(barred(r_scaled), constant(Q(-1)));
  const Tensor kbar = barred(k);
  const Bi phx = in_x(phi.poly()), phy = in_y(phi.poly());
  const Bi xy = x_minus_y();

  Tensor num = scale(commutator(r_scaled, s_left), phy);
  num = add(num, scale(commutator(rbar_scaled, s_right), phx), Q(-1));
  num = add(num, scale(commutator(k, s_left), xy));
  num = add(num, scale(commutator(kbar, s_right), xy), Q(-1));

  std::array<Bi, 16> rhs;
  for (int n = 0; n < 16; ++n) {
    // pad so the exact division always has room in both variables
    Bi padded(std::max<std::size_t>(num[n].bound_x(), 1), std::max<std::size_t>(num[n].bound_y(), 1));
    padded += num[n];
    rhs[n] = divide_by_x_minus_y(padded);
  }
  const Eigen::Index n = static_cast<Eigen::Index>(chart.size());
  Mat<Q> out(n, n);
  for (Eigen::Index a = 0; a < n; ++a)
    for (Eigen::Index b = 0; b < n; ++b) {
      const auto& ca = chart[static_cast<std::size_t>(a)];
      const auto& cb = chart[static_cast<std::size_t>(b)];
      const Bi& e = rhs[(2 * ca.i + cb.i) * 4 + 2 * ca.j + cb.j];
      out(a, b) = e.coeff(static_cast<std::size_t>(ca.k), static_cast<std::size_t>(cb.k));
    }
  return out;
}

std::vector<CoordIndex> chart_from_bounds(const std::array<int, 4>& top) {
  std::vector<CoordIndex> out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k <= top[2 * i + j]; ++k) out.push_back({i, j, k});
  return out;
}

PolyMat<Q> point_from_chart(const DegreeProfile& p, const std::vector<CoordIndex>& chart,
                            const std::vector<Q>& values) {
  if (values.size() != chart.size()) throw InputError("chart vector has wrong length");
  PolyMat<Q> s(p);
  for (std::size_t n = 0; n < chart.size(); ++n) s.at(chart[n].i, chart[n].j, chart[n].k) = values[n];
  return s;
}

}  // namespace

std::vector<CoordIndex> s_infty_chart(int d) {
  if (d < 1) throw InputError("d must be positive");
  return chart_from_bounds({d, d - 1, d - 1, d - 2});
}

std::vector<CoordIndex> s_prime_infty_chart(int d) {
  if (d < 2) throw InputError("the mixed chart needs d >= 2");
  return chart_from_bounds({d, d + 1, d - 2, d - 2});
}

PolyMat<Q> s_infty_point(int d, const std::vector<Q>& chart) {
  PolyMat<Q> s = point_from_chart(DegreeProfile::beauville(2, d), s_infty_chart(d), chart);
  s.at(1, 0, d) = 1;
  return s;
}

PolyMat<Q> s_prime_infty_point(int d, const std::vector<Q>& chart) {
  PolyMat<Q> s = point_from_chart(DegreeProfile::bv(2, d), s_prime_infty_chart(d), chart);
  s.at(1, 0, d - 1) = 1;
  return s;
}

Mat<Q> first_chart_bracket(const PolyMat<Q>& s, const Phi& phi) {
  const int d = s.profile().d;
  if (s.profile().kind != ProfileKind::beauville || s.size() != 2) throw InputError("expects an r=2 point");
  if (phi.degree() > d + 1) throw InputError("phi must have degree <= d+1 here");
  const Q u = s.coeff(0, 1, d - 1);
  if (u.is_zero()) throw DomainError("u_{d-1} vanishes");
  const Q vd = s.coeff(0, 0, d);
  const Q wsub = s.coeff(1, 0, d - 1);
  const Q sd1 = phi[d + 1], sd = phi[d];

  const Mat2 m1 = {constant(vd), Bi(0, 0), constant(Q(1)), Bi(0, 0)};
  const Mat2 m2 = {Bi(0, 0), Bi(0, 0), constant(Q(1)), Bi(0, 0)};
  const Tensor r_scaled = add(permutation(), scale(kron(m1, m2), x_minus_y() * (Q(1) / u)));

  // first factor of K, entries in y
  Poly<Q> k11(1), k21(1);
  k11[1] = vd * sd1 / u;
  k21[0] = (-wsub * sd1 + sd) / u;
  k21[1] = sd1 / u;
  const Mat2 kl = {in_y(k11), constant(-sd1), in_y(k21), Bi(0, 0)};
  const Mat2 kr = {Bi(0, 0), in_y(s(0, 1)), in_y(-s(1, 0)), Bi(0, 0)};
  return assemble(s, phi, r_scaled, kron(kl, kr), s_infty_chart(d));
}

Mat<Q> second_chart_bracket(const PolyMat<Q>& s, const Phi& phi) {
  const int d = s.profile().d;
  if (s.profile().kind != ProfileKind::bv || s.size() != 2) throw InputError("expects an r=2 mixed-profile point");
  if (d < 3) throw InputError("the printed mixed-chart bracket involves u_{d-3}; needs d >= 3");
  const Q vd = s.coeff(0, 0, d);
  const Q wt = s.coeff(0, 1, d + 1), wd = s.coeff(0, 1, d);
  const Q u2 = s.coeff(1, 0, d - 2), u3 = s.coeff(1, 0, d - 3);
  const Q s2 = phi[d + 2], s1 = phi[d + 1], s0 = phi[d];

  // A(x+y) = w_{d+1}(x + y - u_{d-2}) + w_d
  Bi a_sum(1, 1);
  a_sum(std::size_t{0}, std::size_t{0}) = -wt * u2 + wd;
  a_sum(std::size_t{1}, std::size_t{0}) = wt;
  a_sum(std::size_t{0}, std::size_t{1}) = wt;
  const Mat2 m1 = {constant(vd), a_sum, Bi(0, 0), Bi(0, 0)};
  const Mat2 m2 = {Bi(0, 0), constant(Q(1)), Bi(0, 0), Bi(0, 0)};
  const Tensor r_scaled = add(permutation(), scale(kron(m1, m2), x_minus_y()));

  // B(x,y), with the sign of the sigma_{d+1} term as the ambient bracket requires
  Bi b(2, 2);
  b(std::size_t{2}, std::size_t{0}) = s2;
  b(std::size_t{0}, std::size_t{2}) = s2;
  b(std::size_t{1}, std::size_t{1}) = s2;
  b(std::size_t{1}, std::size_t{0}) = -s2 * u2 + s1;
  b(std::size_t{0}, std::size_t{1}) = -s2 * u2 + s1;
  b(std::size_t{0}, std::size_t{0}) = s2 * (u2 * u2 - u3) - s1 * u2 + s0;
  const Mat2 kl = {Bi(0, 0), b, Bi(0, 0), Bi(0, 0)};
  const Mat2 kr = {Bi(0, 0), in_y(-s(0, 1)), in_y(s(1, 0)), Bi(0, 0)};
  return assemble(s, phi, r_scaled, kron(kl, kr), s_prime_infty_chart(d));
}

Mat<Q> induced_chart_bracket(System sys, const PolyMat<Q>& ambient, const Phi& phi) {
  const int d = ambient.profile().d;
  if (ambient.size() != 2) throw InputError("chart brackets are implemented for r = 2");
  const BracketTable t = build_tensor(sys, 2, d, phi);
  const auto x = ambient.with_profile(t.profile()).flatten(t.coords());
  Mat<Q> j;
  if (sys == System::beauville)
    j = chart_jacobian([d](const auto& v) { return s_infty_chart_map(d, v); }, x);
  else
    j = chart_jacobian([d](const auto& v) { return s_prime_infty_chart_map(d, v); }, x);
  const Mat<Q> pi = t.evaluate(x);
  return Mat<Q>(j * pi * j.transpose());
}

CrosscheckReport induced_bracket_crosscheck(System sys, const PolyMat<Q>& ambient, const Phi& phi) {
  const Mat<Q> induced = induced_chart_bracket(sys, ambient, phi);
  const Mat<Q> printed =
      sys == System::beauville
          ? first_chart_bracket(normalize_beauville(ambient).s, phi)
          : second_chart_bracket(normalize_bv_r2(ambient).s, phi);
  CrosscheckReport rep;
  for (Eigen::Index a = 0; a < induced.rows(); ++a)
    for (Eigen::Index b = 0; b < induced.cols(); ++b) {
      ++rep.pairs;
      if (induced(a, b) != printed(a, b)) {
        ++rep.mismatches;
        if (!rep.first_mismatch) rep.first_mismatch = {static_cast<int>(a), static_cast<int>(b)};
      }
    }
  return rep;
}

}  // namespace laxbench
