#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "laxbench/mpoly.hpp"
#include "laxbench/polymat.hpp"

namespace laxbench {

/// g = (r-1)(rd-2)/2.
inline int genus(int r, int d) { return (r - 1) * (r * d - 2) / 2; }

template <class T>
struct SpectralData {
  std::vector<Poly<T>> s;  // s_1..s_r
  int genus = 0;
  std::vector<Poly<T>> hamiltonians;  // hamiltonians[k-1] = (1/k) Tr A^k
};

/// True when every entry degree respects the profile.
template <class T>
bool membership(const PolyMat<T>& a, const DegreeProfile& p) {
  return a.fits(p);
}

template <class T>
SpectralData<T> spectral_map(const PolyMat<T>& a) {
  const DegreeProfile& p = a.profile();
  SpectralData<T> out;
  out.s = char_poly(a);
  for (int i = 1; i <= p.r; ++i) {
    const Poly<T>& si = out.s[static_cast<std::size_t>(i - 1)];
    for (std::size_t k = static_cast<std::size_t>(p.spectral_bound(i)) + 1; k < si.size(); ++k)
      if (!value_is_zero(si[k])) throw InternalError("characteristic coefficient exceeds its degree bound");
  }
  out.genus = genus(p.r, p.kind == ProfileKind::bullet ? p.d + 1 : p.d);
  for (int k = 1; k <= p.r; ++k) out.hamiltonians.push_back(trace_power(a, k));
  return out;
}

/// Coefficient x^j of (1/k) Tr A^k, zero outside the stored range.
template <class T>
T hamiltonian(const SpectralData<T>& sd, int k, int j) {
  return sd.hamiltonians[static_cast<std::size_t>(k - 1)].coeff(static_cast<std::size_t>(j));
}

/// Newton identities p_k = -k s_k - sum_{m<k} s_m p_{k-m}, with p_k = k H^(k).
template <class T>
bool newton_consistent(const SpectralData<T>& sd) {
  const int r = static_cast<int>(sd.s.size());
  std::vector<Poly<T>> pk;
  for (int k = 1; k <= r; ++k) pk.push_back(sd.hamiltonians[k - 1] * T(k));
  for (int k = 1; k <= r; ++k) {
    Poly<T> rhs = sd.s[k - 1] * T(-k);
    for (int m = 1; m < k; ++m) rhs -= sd.s[m - 1] * pk[k - m - 1];
    const Poly<T> diff = pk[k - 1] - rhs;
    for (std::size_t n = 0; n < diff.size(); ++n)
      if (!value_is_zero(diff[n])) return false;
  }
  return true;
}

/// Monic gcd over a field.
template <class T>
Poly<T> poly_gcd(Poly<T> a, Poly<T> b) {
  while (!b.is_zero()) {
    Poly<T> r = divmod(a, b).remainder;
    a = std::move(b);
    b = std::move(r);
  }
  const int da = a.degree();
  if (da < 0) return a;
  const T lead = a[static_cast<std::size_t>(da)];
  Poly<T> out(static_cast<std::size_t>(da));
  for (int k = 0; k <= da; ++k) out[static_cast<std::size_t>(k)] = a[static_cast<std::size_t>(k)] / lead;
  return out;
}

/// Necessary conditions recorded for a sampled point. Irreducibility of the
/// spectral curve is never claimed.
struct GenericityCertificate {
  bool top_coefficient_nonzero = false;  // s_r(x) not identically zero
  bool fiber_squarefree = false;         // P(x0, y) has no repeated root in y
  Rational fiber_x;
  int attempts = 0;
  std::vector<std::string> checks_performed{"s_r nonzero", "squarefree fiber via gcd"};

  bool passed() const { return top_coefficient_nonzero && fiber_squarefree; }
};

/// P(x0, y) as a polynomial in y.
template <class T>
Poly<T> spectral_fiber(const SpectralData<T>& sd, const T& x0) {
  const int r = static_cast<int>(sd.s.size());
  Poly<T> f(static_cast<std::size_t>(r));
  f[static_cast<std::size_t>(r)] = T(1);
  for (int i = 1; i <= r; ++i) f[static_cast<std::size_t>(r - i)] = sd.s[i - 1](x0);
  return f;
}

inline GenericityCertificate certify(const PolyMat<Rational>& a) {
  GenericityCertificate cert;
  const auto sd = spectral_map(a);
  cert.top_coefficient_nonzero = !sd.s.back().is_zero();
  cert.fiber_x = make_rational(1, 3);
  const Poly<Rational> f = spectral_fiber(sd, cert.fiber_x);
  cert.fiber_squarefree = poly_gcd(f, derivative(f)).degree() == 0;
  return cert;
}

template <class T>
struct PhasePoint {
  PolyMat<T> matrix;
  GenericityCertificate certificate;
};

/// Deterministic rational sampler over a fixed box: numerators in [-9, 9],
/// denominators in [1, 6].
class RationalSampler {
 public:
  explicit RationalSampler(std::uint64_t seed) : rng_(seed) {}

  Rational operator()() {
    std::uniform_int_distribution<int> num(-9, 9), den(1, 6);
    const int n = num(rng_);
    const int dd = den(rng_);
    return make_rational(n, dd);
  }
  Rational nonzero() {
    for (;;) {
      Rational q = (*this)();
      if (!q.is_zero()) return q;
    }
  }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

template <class T = Rational>
Mat<T> random_matrix(RationalSampler& rs, int rows, int cols) {
  Mat<T> m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = from_rational<T>(rs());
  return m;
}

inline PolyMat<Rational> random_polymat(RationalSampler& rs, const DegreeProfile& p) {
  PolyMat<Rational> a(p);
  for (int i = 0; i < p.r; ++i)
    for (int j = 0; j < p.r; ++j)
      for (int k = 0; k <= p.bound(i, j); ++k) a.at(i, j, k) = rs();
  return a;
}

/// Seeded generic point; resamples until the certificate passes.
inline PhasePoint<Rational> random_point(const DegreeProfile& p, std::uint64_t seed) {
  RationalSampler rs(seed);
  for (int attempt = 1;; ++attempt) {
    PhasePoint<Rational> pt{random_polymat(rs, p), {}};
    pt.certificate = certify(pt.matrix);
    pt.certificate.attempts = attempt;
    if (pt.certificate.passed()) return pt;
  }
}

/// Lifts a point of a smaller profile into a larger one (e.g. M into M-bullet).
template <class T>
PolyMat<T> embed(const PolyMat<T>& a, const DegreeProfile& target) {
  return a.with_profile(target);
}

/// Symbolic matrix whose coefficients are the coordinate functions.
inline PolyMat<MPoly<Rational>> symbolic_matrix(const CoordSet& cs) {
  PolyMat<MPoly<Rational>> a(cs.profile());
  for (int n = 0; n < cs.size(); ++n) {
    const auto& c = cs[n];
    a.at(c.i, c.j, c.k) = MPoly<Rational>::variable(n);
  }
  return a;
}

}  // namespace laxbench
