#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "laxbench/flows.hpp"
#include "laxbench/polymat.hpp"
#include "laxbench/spaces.hpp"

namespace laxbench {

// ---------------------------------------------------------------------------
// Regular (nonderogatory) constant matrices

struct JordanData {
  bool regular = false;
  // Float backend: eigenvalue clusters and their sizes (one block each when regular).
  std::vector<Complex> eigenvalues;
  std::vector<int> block_sizes;
  // Both backends: char poly coefficients beta_1..beta_r, size of the block
  // at eigenvalue zero, and a cyclic vector when regular.
  std::vector<Complex> char_poly;
  int zero_block = 0;
  std::vector<Complex> cyclic_vector;
};

/// Columns u, Au, ..., A^{r-1}u.
template <class T>
Mat<T> krylov_matrix(const Mat<T>& a, const Vec<T>& u) {
  const Eigen::Index r = a.rows();
  Mat<T> k(r, r);
  Vec<T> col = u;
  for (Eigen::Index i = 0; i < r; ++i) {
    k.col(i) = col;
    if (i + 1 < r) col = a * col;
  }
  return k;
}

/// Minimal polynomial has degree r iff I, A, ..., A^{r-1} are independent.
template <class T>
bool minimal_polynomial_is_full(const Mat<T>& a) {
  const Eigen::Index r = a.rows();
  Mat<T> powers(r * r, r);
  Mat<T> p = identity_matrix<T>(r);
  for (Eigen::Index k = 0; k < r; ++k) {
    for (Eigen::Index n = 0; n < r * r; ++n) powers(n, k) = p(n / r, n % r);
    p = p * a;
  }
  return matrix_rank(powers) == r;
}

/// det(u, Au, ..., A^{r-1}u) != 0.
template <class T>
bool generates(const Mat<T>& a, const Vec<T>& u) {
  const T det = determinant(krylov_matrix(a, u));
  if constexpr (is_exact_v<T>) {
    return !value_is_zero(det);
  } else {
    double scale = 1.0;
    for (Eigen::Index i = 0; i < a.rows(); ++i) scale = std::max(scale, magnitude(u(i)));
    return magnitude(det) > 1e-8 * std::pow(scale, static_cast<double>(a.rows()));
  }
}

template <class T>
Complex complex_value(const T& v) {
  if constexpr (std::is_same_v<T, Rational>) return from_rational<Complex>(v);
  else return Complex(base_value(v));
}

template <class T>
JordanData is_regular(const Mat<T>& a) {
  const Eigen::Index r = a.rows();
  JordanData jd;
  for (const auto& b : char_poly_coefficients(a)) jd.char_poly.push_back(complex_value(b));
  jd.regular = minimal_polynomial_is_full(a);
  if constexpr (!is_exact_v<T>) {
    // Cluster eigenvalues; one Jordan block per cluster iff rank(A - alpha) = r - 1.
    Eigen::ComplexEigenSolver<Mat<Complex>> es(convert_matrix<Complex>(a));
    const auto ev = es.eigenvalues();
    double scale = 1.0;
    for (Eigen::Index i = 0; i < r; ++i) scale = std::max(scale, std::abs(ev(i)));
    std::vector<bool> used(static_cast<std::size_t>(r), false);
    for (Eigen::Index i = 0; i < r; ++i) {
      if (used[i]) continue;
      int size = 0;
      Complex sum = 0;
      for (Eigen::Index j = i; j < r; ++j)
        if (!used[j] && std::abs(ev(j) - ev(i)) <= 1e-8 * scale) {
          used[j] = true;
          ++size;
          sum += ev(j);
        }
      jd.eigenvalues.push_back(sum / double(size));
      jd.block_sizes.push_back(size);
    }
    bool one_block_each = true;
    for (const auto& alpha : jd.eigenvalues) {
      Mat<Complex> shifted = convert_matrix<Complex>(a) - alpha * identity_matrix<Complex>(r);
      if (rank_numeric(shifted) != r - 1) one_block_each = false;
    }
    jd.regular = jd.regular && one_block_each;
  }
  // Multiplicity of the zero root of the char poly.
  for (Eigen::Index k = r; k >= 1; --k) {
    if (!value_is_zero(char_poly_coefficients(a)[static_cast<std::size_t>(k - 1)])) break;
    ++jd.zero_block;
  }
  if (jd.regular) {
    // Unit vectors first, then moment vectors (1, k, k^2, ...); one of them works.
    for (int attempt = 0; attempt < r + 64 && jd.cyclic_vector.empty(); ++attempt) {
      Vec<T> u = zero_vector<T>(r);
      if (attempt < r) {
        u(attempt) = T(1);
      } else {
        T pw = T(1);
        for (Eigen::Index i = 0; i < r; ++i, pw = pw * T(attempt - r + 1)) u(i) = pw;
      }
      if (generates(a, u))
        for (Eigen::Index i = 0; i < r; ++i) jd.cyclic_vector.push_back(complex_value(u(i)));
    }
  }
  return jd;
}

/// xi_i(A) = A^i + beta_1 A^{i-1} + ... + beta_i I.
template <class T>
Mat<T> xi(const Mat<T>& a, int i) {
  const Eigen::Index r = a.rows();
  if (i < 0 || i > r - 1) throw InputError("xi index outside 0..r-1");
  const auto beta = char_poly_coefficients(a);
  Mat<T> out = identity_matrix<T>(r);
  for (int k = 1; k <= i; ++k) {
    out = a * out;
    for (Eigen::Index n = 0; n < r; ++n) out(n, n) += beta[static_cast<std::size_t>(k - 1)];
  }
  return out;
}

template <class T>
bool in_V(const Mat<T>& a, const Vec<T>& u) {
  if (!minimal_polynomial_is_full(a)) throw InputError("in_V requires a regular matrix");
  return generates(a, u);
}

/// Kernel vector of a singular regular matrix: first nonzero column of adj(A)
/// scaled so its first nonzero component is 1.
template <class T>
Vec<T> v0(const Mat<T>& a) {
  const Mat<T> adj = adjugate(a);
  for (Eigen::Index j = 0; j < adj.cols(); ++j) {
    for (Eigen::Index i = 0; i < adj.rows(); ++i) {
      if (value_is_zero(adj(i, j))) continue;
      const T lead = adj(i, j);
      Vec<T> v(adj.rows());
      for (Eigen::Index n = 0; n < adj.rows(); ++n) v(n) = adj(n, j) / lead;
      return v;
    }
  }
  throw DomainError("kernel vector undefined: adjugate vanishes");
}

/// g(u, A) = (u, xi_1(A)u, ..., xi_{r-1}(A)u).
template <class T>
Mat<T> g_matrix(const Vec<T>& u, const Mat<T>& a) {
  const Eigen::Index r = a.rows();
  if (!minimal_polynomial_is_full(a)) throw InputError("g(u,A) requires a regular matrix");
  if (!generates(a, u)) throw InputError("g(u,A) requires u in V(A)");
  Mat<T> g(r, r);
  const auto beta = char_poly_coefficients(a);
  Mat<T> x = identity_matrix<T>(r);
  for (Eigen::Index i = 0; i < r; ++i) {
    g.col(i) = x * u;
    if (i + 1 < r) {
      x = a * x;
      for (Eigen::Index n = 0; n < r; ++n) x(n, n) += beta[static_cast<std::size_t>(i)];
    }
  }
  return g;
}

/// First row (-beta_1 .. -beta_r), ones on the subdiagonal, zero elsewhere.
template <class T>
bool is_companion_shape(const Mat<T>& m, const std::vector<T>& beta) {
  const Eigen::Index r = m.rows();
  for (Eigen::Index i = 0; i < r; ++i)
    for (Eigen::Index j = 0; j < r; ++j) {
      T expect = T(0);
      if (i == 0) expect = -beta[static_cast<std::size_t>(j)];
      else if (j == i - 1) expect = T(1);
      if (!value_is_zero(T(m(i, j) - expect))) return false;
    }
  return true;
}

/// Omega: companion shape with vanishing last column.
template <class T>
bool in_omega(const Mat<T>& m) {
  const Eigen::Index r = m.rows();
  for (Eigen::Index i = 1; i < r; ++i)
    for (Eigen::Index j = 0; j < r; ++j)
      if (!value_is_zero(T(m(i, j) - T(j == i - 1 ? 1 : 0)))) return false;
  return value_is_zero(m(0, r - 1));
}

/// T: last column (rho, 0, ..., 0) with rho != 0.
template <class T>
bool in_T(const Mat<T>& m) {
  const Eigen::Index r = m.rows();
  if (value_is_zero(m(0, r - 1))) return false;
  for (Eigen::Index i = 1; i < r; ++i)
    if (!value_is_zero(m(i, r - 1))) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Normal forms

enum class NormalTarget { s_infty, s_c, s_prime_infty };

/// c = infinity, or a finite expansion point.
struct ExpansionPoint {
  std::optional<Rational> c;  // empty means infinity
  bool infinite() const { return !c.has_value(); }
};

template <class T>
struct NormalForm {
  PolyMat<T> s;
  Mat<T> gauge;              // constant gauge (conjugation) for the Beauville forms
  PolyMat<T> gauge_poly;     // polynomial gauge [[1, b1 x + b0], [0, c]] for r = 2 mixed profile
  T c{}, b1{}, b0{};
  NormalTarget target = NormalTarget::s_infty;
};

/// The pair of constant matrices that drives the normalization: (A_d, A_{d-1})
/// at infinity, (A(c), A'(c)) at a finite point.
template <class T>
std::pair<Mat<T>, Mat<T>> leading_pair(const PolyMat<T>& a, const ExpansionPoint& at) {
  const int d = a.profile().d;
  if (at.infinite()) return {a.coefficient(d), a.coefficient(d - 1)};
  const T c = lift<T>(*at.c);
  const int r = a.size();
  Mat<T> val(r, r), der(r, r);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      val(i, j) = a(i, j)(c);
      der(i, j) = derivative(a(i, j))(c);
    }
  return {val, der};
}

template <class T>
bool m_membership(const PolyMat<T>& a, const ExpansionPoint& at = {}) {
  const auto [top, next] = leading_pair(a, at);
  if (!minimal_polynomial_is_full(top)) return false;
  if (!value_is_zero(determinant(top))) return false;
  return generates(top, Vec<T>(next * v0(top)));
}

template <class T>
bool m_infty_membership(const PolyMat<T>& a) {
  return m_membership(a, ExpansionPoint{});
}

/// S = g^{-1} A g with g = g(next * v0(top), top). DomainError off the domain.
template <class T>
NormalForm<T> normalize_beauville(const PolyMat<T>& a, const ExpansionPoint& at = {}) {
  if (a.profile().kind != ProfileKind::beauville) throw InputError("normalization expects the Beauville profile");
  const auto [top, next] = leading_pair(a, at);
  if (!minimal_polynomial_is_full(top)) throw DomainError("leading matrix is not regular");
  if (!value_is_zero(determinant(top))) throw DomainError("leading matrix is not singular");
  const Vec<T> u = next * v0(top);
  if (!generates(top, u)) throw DomainError("A_{d-1} v0(A_d) is not a cyclic vector");
  NormalForm<T> nf;
  nf.gauge = g_matrix(u, top);
  nf.s = conjugate_constant(inverse(nf.gauge), a, nf.gauge).with_profile(a.profile());
  nf.target = at.infinite() ? NormalTarget::s_infty : NormalTarget::s_c;
  const auto [stop, snext] = leading_pair(nf.s, at);
  if (!in_omega(stop) || !in_T(snext)) throw InternalError("normal form lost its shape");
  return nf;
}

/// Makes det A_d vanish by adjusting one entry of A_d (a retraction onto the
/// hypersurface det A_d = 0, used to extend chart functions off it).
template <class T>
PolyMat<T> retract_singular_top(PolyMat<T> a) {
  const int d = a.profile().d, r = a.size();
  const Mat<T> top = a.coefficient(d);
  const T det = determinant(top);
  const Mat<T> adj = adjugate(top);  // adj(q, p) is the cofactor of (p, q)
  for (int p = 0; p < r; ++p)
    for (int q = 0; q < r; ++q) {
      if (value_is_zero(adj(q, p))) continue;
      a.at(p, q, d) = a.at(p, q, d) - det / adj(q, p);
      return a;
    }
  throw DomainError("leading matrix has rank below r-1");
}

/// r = 2 mixed profile: g = [[1, b1 x + b0], [0, c]] with g^{-1} A g in the
/// normal shape (monic (2,1) entry of degree d-1, (2,2) entry without x^d and
/// x^{d-1} terms).
template <class T>
NormalForm<T> normalize_bv_r2(const PolyMat<T>& a) {
  const DegreeProfile& p = a.profile();
  if (p.kind != ProfileKind::bv || p.r != 2) throw InputError("expects the r=2 mixed-degree profile");
  const int d = p.d;
  const Poly<T>& v = a(0, 0);
  const Poly<T>& w = a(0, 1);
  const Poly<T>& u = a(1, 0);
  const Poly<T>& t = a(1, 1);
  const T c = u.coeff(static_cast<std::size_t>(d - 1));
  if (value_is_zero(c)) throw DomainError("chart breakdown: leading coefficient of the (2,1) entry vanishes");
  const T b1 = -t.coeff(static_cast<std::size_t>(d));
  const T u_sub = d >= 2 ? u.coeff(static_cast<std::size_t>(d - 2)) : T(0);
  const T b0 = -t.coeff(static_cast<std::size_t>(d - 1)) - b1 * u_sub / c;
  Poly<T> b(1);
  b[0] = b0;
  b[1] = b1;
  const T ic = T(1) / c;
  NormalForm<T> nf;
  nf.c = c;
  nf.b1 = b1;
  nf.b0 = b0;
  nf.target = NormalTarget::s_prime_infty;
  PolyMat<T> s(p);
  s.set(0, 0, v - b * u * ic);
  s.set(0, 1, v * b + w * c - b * (u * b + t * c) * ic);
  s.set(1, 0, u * ic);
  s.set(1, 1, (t + u * b * ic));
  nf.s = s;
  PolyMat<T> g(DegreeProfile::uniform(2, 1));
  g.at(0, 0, 0) = T(1);
  g.set(0, 1, b);
  g.at(1, 1, 0) = c;
  nf.gauge_poly = g;
  if (!value_is_zero(T(s.coeff(1, 0, d - 1) - T(1))) || !value_is_zero(s.coeff(1, 1, d)) ||
      !value_is_zero(s.coeff(1, 1, d - 1)))
    throw InternalError("mixed normal form lost its shape");
  return nf;
}

/// g(x)^{-1} A(x) g(x) for g = [[1, b(x)], [0, c]].
template <class T>
PolyMat<T> gr_conjugate_r2(const PolyMat<T>& a, const Poly<T>& b, const T& c) {
  const Poly<T>& v = a(0, 0);
  const Poly<T>& w = a(0, 1);
  const Poly<T>& u = a(1, 0);
  const Poly<T>& t = a(1, 1);
  const T ic = T(1) / c;
  PolyMat<T> s(DegreeProfile::uniform(2, a.profile().max_bound() + 2));
  s.set(0, 0, v - b * u * ic);
  s.set(0, 1, v * b + w * c - b * (u * b + t * c) * ic);
  s.set(1, 0, u * ic);
  s.set(1, 1, t + u * b * ic);
  return s;
}

/// Tr S = 0 and beta_1(S_d) = ... = beta_{r-1}(S_d) = 0.
template <class T>
bool donagi_markman_member(const PolyMat<T>& s) {
  const Poly<T> tr = trace(s);
  for (std::size_t k = 0; k < tr.size(); ++k)
    if (!value_is_zero(tr[k])) return false;
  const auto beta = char_poly_coefficients(s.coefficient(s.profile().d));
  for (std::size_t i = 0; i + 1 < beta.size(); ++i)
    if (!value_is_zero(beta[i])) return false;
  return true;
}

// ---------------------------------------------------------------------------
// r = 2 charts

/// Free coordinates of the r = 2 normal-form spaces, in CoordSet order.
std::vector<CoordIndex> s_infty_chart(int d);
std::vector<CoordIndex> s_prime_infty_chart(int d);

/// Tr S = 0 and u_{d-1} = 1 on the first chart.
template <class T>
bool mumford_member(const PolyMat<T>& s) {
  const int d = s.profile().d;
  const Poly<T> tr = trace(s);
  for (std::size_t k = 0; k < tr.size(); ++k)
    if (!value_is_zero(tr[k])) return false;
  return value_is_zero(T(s.coeff(0, 1, d - 1) - T(1)));
}

/// Tr S = 0 and w_{d+1} = 1 on the second chart.
template <class T>
bool even_mumford_member(const PolyMat<T>& s) {
  const int d = s.profile().d;
  const Poly<T> tr = trace(s);
  for (std::size_t k = 0; k < tr.size(); ++k)
    if (!value_is_zero(tr[k])) return false;
  return value_is_zero(T(s.coeff(0, 1, d + 1) - T(1)));
}

/// Chart coordinates as functions of the ambient coordinates. The first chart
/// reads the lower d+1 coefficients from the enlarged-space coordinates,
/// retracts onto det A_d = 0 and normalizes at infinity.
template <class U>
std::vector<U> s_infty_chart_map(int d, const std::vector<U>& ambient) {
  const CoordSet big(DegreeProfile::bullet(2, d));
  const DegreeProfile pm = DegreeProfile::beauville(2, d);
  PolyMat<U> a(pm);
  for (int n = 0; n < big.size(); ++n) {
    const auto& c = big[n];
    if (c.k <= d) a.at(c.i, c.j, c.k) = ambient[static_cast<std::size_t>(n)];
  }
  const auto nf = normalize_beauville(retract_singular_top(a));
  std::vector<U> out;
  for (const auto& c : s_infty_chart(d)) out.push_back(nf.s.coeff(c.i, c.j, c.k));
  return out;
}

template <class U>
std::vector<U> s_prime_infty_chart_map(int d, const std::vector<U>& ambient) {
  const CoordSet cs(DegreeProfile::bv(2, d));
  const auto nf = normalize_bv_r2(PolyMat<U>::from_coords(cs, ambient));
  std::vector<U> out;
  for (const auto& c : s_prime_infty_chart(d)) out.push_back(nf.s.coeff(c.i, c.j, c.k));
  return out;
}

/// Jacobian (chart x ambient) of a chart map at x.
template <class T, class F>
Mat<T> chart_jacobian(F&& map, const std::vector<T>& x) {
  const auto vars = make_variables(x);
  const auto y = map(vars);
  Mat<T> j = zero_matrix<T>(static_cast<Eigen::Index>(y.size()), static_cast<Eigen::Index>(x.size()));
  for (std::size_t a = 0; a < y.size(); ++a)
    for (std::size_t b = 0; b < x.size(); ++b) j(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = y[a].partial(b);
  return j;
}

/// Builds the point of the chart space from chart coordinates.
PolyMat<Rational> s_infty_point(int d, const std::vector<Rational>& chart);
PolyMat<Rational> s_prime_infty_point(int d, const std::vector<Rational>& chart);

/// {chart_a, chart_b} from the printed r-matrix formula, for every chart pair.
Mat<Rational> first_chart_bracket(const PolyMat<Rational>& s, const Phi& phi);
Mat<Rational> second_chart_bracket(const PolyMat<Rational>& s, const Phi& phi);

/// The same matrix from the ambient tensor through the chain rule.
Mat<Rational> induced_chart_bracket(System sys, const PolyMat<Rational>& ambient, const Phi& phi);

struct CrosscheckReport {
  int pairs = 0;
  int mismatches = 0;
  std::optional<std::pair<int, int>> first_mismatch;
  bool passed() const { return mismatches == 0; }
};

/// Printed formula against the chain-rule oracle at one ambient point.
CrosscheckReport induced_bracket_crosscheck(System sys, const PolyMat<Rational>& ambient, const Phi& phi);

}  // namespace laxbench
