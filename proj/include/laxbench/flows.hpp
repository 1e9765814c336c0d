#pragma once

#include <string>
#include <vector>

#include "laxbench/orbit.hpp"
#include "laxbench/poisson.hpp"

namespace laxbench {

inline OrbitModel orbit_for(System s, int r) { return s == System::beauville ? OrbitModel::pgl(r) : OrbitModel::gr(r); }

inline DegreeProfile point_profile(System s, int r, int d) {
  return s == System::beauville ? DegreeProfile::beauville(r, d) : DegreeProfile::bv(r, d);
}
inline DegreeProfile tensor_profile(System s, int r, int d) {
  return s == System::beauville ? DegreeProfile::bullet(r, d) : DegreeProfile::bv(r, d);
}

/// Number of fields Y^(k)_i: dk on the Beauville space, dk+1 on the mixed one.
inline int y_field_count(const DegreeProfile& p, int k) {
  return p.kind == ProfileKind::bv ? p.d * k + 1 : p.d * k;
}

/// Coefficients of a^i in [A(x), A(a)^k] / (x - a), each in A's profile.
template <class T>
std::vector<PolyMat<T>> y_fields(const PolyMat<T>& a, int k) {
  const int r = a.size();
  if (k < 1 || k > r - 1) throw InputError("Y field index k must satisfy 1 <= k <= r-1");
  const DegreeProfile& p = a.profile();
  const PolyMat<T> ak = matrix_power(a, k);  // read as a polynomial in the second variable
  const std::size_t bx = static_cast<std::size_t>(p.max_bound());
  const std::size_t ba = static_cast<std::size_t>(ak.profile().d);
  const int count = y_field_count(p, k);

  std::vector<PolyMat<T>> out(static_cast<std::size_t>(count), PolyMat<T>(p));
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      BiPoly<T> num(bx, ba);
      for (int l = 0; l < r; ++l) {
        num += BiPoly<T>::outer(a(i, l), ak(l, j));
        num -= BiPoly<T>::outer(a(l, j), ak(i, l));
      }
      const BiPoly<T> q = divide_by_x_minus_y(num);
      const double scale = coeff_scale(q.coeffs());
      for (std::size_t n = 0; n <= q.bound_y(); ++n) {
        Poly<T> entry(q.bound_x());
        for (std::size_t m = 0; m <= q.bound_x(); ++m) entry[m] = q(m, n);
        if (static_cast<int>(n) >= count) {
          for (const auto& c : entry.coeffs())
            if (!negligible(c, scale)) throw InternalError("Y field index beyond its range");
          continue;
        }
        out[n].set(i, j, entry);
      }
    }
  return out;
}

/// Gradients of H^(k)_j for every j, in the CoordSet order of `p`, at x.
template <class T>
std::vector<std::vector<T>> hamiltonian_gradients(const DegreeProfile& p, int k, const std::vector<T>& x) {
  const CoordSet cs(p);
  const auto vars = make_variables(x);
  const auto a = PolyMat<Dual<T>>::from_coords(cs, vars);
  const Poly<Dual<T>> h = trace_power(a, k);
  std::vector<std::vector<T>> out;
  for (std::size_t j = 0; j < h.size(); ++j) {
    std::vector<T> g(x.size());
    for (std::size_t n = 0; n < x.size(); ++n) g[n] = h[j].partial(n);
    out.push_back(std::move(g));
  }
  return out;
}

template <class T>
struct LemmaCheck {
  bool passed = false;
  bool exact_equality = false;  // no orbit correction was needed
  std::vector<T> lhs, rhs;
  double residual_norm = 0.0;
};

/// sum_{i=0}^{min(j,d+2)} sigma_i Y^(k-1)_{j-i}(A), flattened into `target` coordinates.
template <class T>
std::vector<T> lemma_rhs(const PolyMat<T>& a, int k, int j, const Phi& phi, const CoordSet& target) {
  std::vector<T> out(static_cast<std::size_t>(target.size()), T(0));
  if (k < 2) return out;
  const auto ys = y_fields(a, k - 1);
  const int d = a.profile().d;
  for (int i = 0; i <= std::min(j, d + 2); ++i) {
    const int idx = j - i;
    if (idx < 0 || idx >= static_cast<int>(ys.size()) || phi[i].is_zero()) continue;
    const auto y = ys[idx].with_profile(target.profile()).flatten(target);
    const T s = lift<T>(phi[i]);
    for (std::size_t n = 0; n < out.size(); ++n) out[n] += s * y[n];
  }
  return out;
}

/// Hamiltonian field of H^(k)_j against sum sigma_i Y^(k-1)_{j-i}: exact
/// equality on the Beauville space, equality up to orbit tangents on the
/// mixed-degree space.
template <class T>
LemmaCheck<T> lemma_ham_y_check(const PolyMat<T>& a, int k, int j, const Phi& phi, System s) {
  const int r = a.size(), d = a.profile().d;
  const BracketTable t = build_tensor(s, r, d, phi);
  const CoordSet& cs = t.coords();
  const auto x = a.with_profile(t.profile()).flatten(cs);
  const auto grads = hamiltonian_gradients(t.profile(), k, x);
  LemmaCheck<T> out;
  out.lhs = (j < static_cast<int>(grads.size())) ? hamiltonian_vf_from_gradient(t, grads[j], x)
                                                  : std::vector<T>(x.size(), T(0));
  out.rhs = lemma_rhs(a, k, j, phi, cs);
  std::vector<T> diff(x.size());
  bool equal = true;
  for (std::size_t n = 0; n < x.size(); ++n) {
    diff[n] = out.lhs[n] - out.rhs[n];
    if (!value_is_zero(diff[n])) equal = false;
  }
  out.exact_equality = equal;
  if (s == System::beauville || equal) {
    out.passed = equal;
    return out;
  }
  const auto dec = orbit_decompose(diff, a.with_profile(t.profile()), orbit_for(s, r));
  out.residual_norm = dec.residual_norm;
  out.passed = dec.orbit_tangent;
  return out;
}

template <class T>
struct LadderCheck {
  bool passed = true;
  std::vector<bool> per_structure;  // i = 0..d+2
};

/// {H^(k+1)_{j+i}, *}_i against Y^(k)_j for every basis structure i.
template <class T>
LadderCheck<T> multi_hamiltonian_check(const PolyMat<T>& a, int k, int j, System s) {
  const int r = a.size(), d = a.profile().d;
  if (k < 1 || k > r - 1 || j < 0 || j > k * d - 2) throw InputError("ladder index outside the admissible range");
  const DegreeProfile tp = tensor_profile(s, r, d);
  const CoordSet cs(tp);
  const auto x = a.with_profile(tp).flatten(cs);
  const auto grads = hamiltonian_gradients(tp, k + 1, x);
  const auto y = y_fields(a, k)[static_cast<std::size_t>(j)].with_profile(tp).flatten(cs);
  LadderCheck<T> out;
  for (int i = 0; i <= d + 2; ++i) {
    const BracketTable t = build_tensor(s, r, d, Phi::monomial(d, i));
    const auto v = hamiltonian_vf_from_gradient(t, grads[static_cast<std::size_t>(j + i)], x);
    std::vector<T> diff(x.size());
    bool equal = true;
    for (std::size_t n = 0; n < x.size(); ++n) {
      diff[n] = v[n] - y[n];
      if (!value_is_zero(diff[n])) equal = false;
    }
    bool ok = equal;
    if (!equal && s == System::bv) ok = orbit_decompose(diff, a.with_profile(tp), orbit_for(s, r)).orbit_tangent;
    out.per_structure.push_back(ok);
    out.passed = out.passed && ok;
  }
  return out;
}

/// Rank of all Y^(k)_i (1 <= k <= r-1) modulo the orbit tangents at A.
template <class T>
int y_span_rank(const PolyMat<T>& a, System s) {
  const int r = a.size();
  const CoordSet cs(a.profile());
  const auto gens = orbit_for(s, r).generators(a);
  std::vector<std::vector<T>> cols;
  for (const auto& g : gens) cols.push_back(g.flatten(cs));
  const std::size_t n_orbit = cols.size();
  for (int k = 1; k <= r - 1; ++k)
    for (const auto& y : y_fields(a, k)) cols.push_back(y.flatten(cs));
  auto rank_of = [&](std::size_t count) {
    Mat<T> m(cs.size(), static_cast<Eigen::Index>(count));
    for (std::size_t c = 0; c < count; ++c)
      for (int n = 0; n < cs.size(); ++n) m(n, static_cast<Eigen::Index>(c)) = cols[c][static_cast<std::size_t>(n)];
    return static_cast<int>(matrix_rank(m));
  };
  return rank_of(cols.size()) - rank_of(n_orbit);
}

}  // namespace laxbench
