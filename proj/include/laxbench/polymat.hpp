#pragma once

#include <span>
#include <vector>

#include "laxbench/matrix.hpp"
#include "laxbench/poly.hpp"
#include "laxbench/profile.hpp"

namespace laxbench {

/// r x r matrix of univariate polynomials; entry (i,j) carries the bound
/// profile.bound(i,j).
template <class T>
class PolyMat {
 public:
  PolyMat() : PolyMat(DegreeProfile::uniform(1, 0)) {}
  explicit PolyMat(const DegreeProfile& p) : profile_(p) {
    e_.reserve(static_cast<std::size_t>(p.r * p.r));
    for (int i = 0; i < p.r; ++i)
      for (int j = 0; j < p.r; ++j) e_.emplace_back(static_cast<std::size_t>(p.bound(i, j)));
  }

  int size() const { return profile_.r; }
  const DegreeProfile& profile() const { return profile_; }

  const Poly<T>& operator()(int i, int j) const { return e_[idx(i, j)]; }

  /// Replaces entry (i,j); the polynomial must fit the entry bound.
  void set(int i, int j, const Poly<T>& p) {
    e_[idx(i, j)] = p.with_bound(static_cast<std::size_t>(profile_.bound(i, j)));
  }
  /// Coefficient access; k must lie within the entry bound.
  T& at(int i, int j, int k) { return e_[idx(i, j)][static_cast<std::size_t>(k)]; }
  const T& at(int i, int j, int k) const { return e_[idx(i, j)][static_cast<std::size_t>(k)]; }
  T coeff(int i, int j, int k) const {
    if (k < 0) return T(0);
    return e_[idx(i, j)].coeff(static_cast<std::size_t>(k));
  }

  /// True when every entry degree respects `p`.
  bool fits(const DegreeProfile& p) const {
    if (p.r != profile_.r) return false;
    for (int i = 0; i < p.r; ++i)
      for (int j = 0; j < p.r; ++j)
        if ((*this)(i, j).degree() > p.bound(i, j)) return false;
    return true;
  }

  /// Re-declares the profile; InputError when an entry does not fit.
  PolyMat with_profile(const DegreeProfile& p) const {
    if (p.r != profile_.r) throw InputError("profile size mismatch");
    PolyMat out(p);
    for (int i = 0; i < p.r; ++i)
      for (int j = 0; j < p.r; ++j) out.set(i, j, (*this)(i, j));
    return out;
  }

  /// The constant matrix A_k, coefficient of x^k.
  Mat<T> coefficient(int k) const {
    const int r = profile_.r;
    Mat<T> m(r, r);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) m(i, j) = coeff(i, j, k);
    return m;
  }

  /// A(a), for any ring U accepting T constants.
  template <class U = T>
  Mat<U> evaluate(const U& a) const {
    const int r = profile_.r;
    Mat<U> m(r, r);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) m(i, j) = (*this)(i, j)(a);
    return m;
  }

  /// Coordinates in CoordSet order; entries beyond the set's bounds must vanish.
  std::vector<T> flatten(const CoordSet& cs) const {
    std::vector<T> out;
    out.reserve(static_cast<std::size_t>(cs.size()));
    for (const auto& c : cs.coords()) out.push_back(coeff(c.i, c.j, c.k));
    return out;
  }

  static PolyMat from_coords(const CoordSet& cs, std::span<const T> x) {
    if (static_cast<int>(x.size()) != cs.size()) throw InputError("coordinate vector has wrong length");
    PolyMat out(cs.profile());
    for (int n = 0; n < cs.size(); ++n) {
      const auto& c = cs[n];
      out.at(c.i, c.j, c.k) = x[static_cast<std::size_t>(n)];
    }
    return out;
  }
  static PolyMat from_coords(const CoordSet& cs, const std::vector<T>& x) {
    return from_coords(cs, std::span<const T>(x));
  }

  /// Builds a matrix from a constant coefficient sequence A_0, A_1, ...
  static PolyMat from_coefficients(const DegreeProfile& p, const std::vector<Mat<T>>& ak) {
    PolyMat out(p);
    double scale = 0.0;
    if constexpr (!is_exact_v<T>)
      for (const auto& m : ak)
        for (int i = 0; i < p.r; ++i)
          for (int j = 0; j < p.r; ++j) scale = std::max(scale, magnitude(base_value(m(i, j))));
    for (std::size_t k = 0; k < ak.size(); ++k)
      for (int i = 0; i < p.r; ++i)
        for (int j = 0; j < p.r; ++j) {
          if (static_cast<int>(k) <= p.bound(i, j)) {
            out.at(i, j, static_cast<int>(k)) = ak[k](i, j);
          } else if (!negligible(ak[k](i, j), scale)) {
            throw InputError("coefficient exceeds profile bound");
          }
        }
    return out;
  }

  friend PolyMat operator+(const PolyMat& a, const PolyMat& b) {
    check_same(a, b);
    PolyMat out(a.profile_);
    for (std::size_t n = 0; n < a.e_.size(); ++n) out.e_[n] = a.e_[n] + b.e_[n];
    return out;
  }
  friend PolyMat operator-(const PolyMat& a, const PolyMat& b) {
    check_same(a, b);
    PolyMat out(a.profile_);
    for (std::size_t n = 0; n < a.e_.size(); ++n) out.e_[n] = a.e_[n] - b.e_[n];
    return out;
  }
  friend PolyMat operator*(const T& s, PolyMat a) {
    for (auto& p : a.e_) p = s * p;
    return a;
  }
  /// Product; the result carries a uniform profile of the summed max bounds.
  friend PolyMat operator*(const PolyMat& a, const PolyMat& b) {
    if (a.size() != b.size()) throw InputError("matrix size mismatch");
    const int r = a.size();
    PolyMat out(DegreeProfile::uniform(r, a.profile_.max_bound() + b.profile_.max_bound()));
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) {
        Poly<T> acc(static_cast<std::size_t>(out.profile_.d));
        for (int l = 0; l < r; ++l) acc += a(i, l) * b(l, j);
        out.e_[out.idx(i, j)] = acc.with_bound(static_cast<std::size_t>(out.profile_.d));
      }
    return out;
  }
  friend bool operator==(const PolyMat& a, const PolyMat& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t n = 0; n < a.e_.size(); ++n)
      if (!(a.e_[n] == b.e_[n])) return false;
    return true;
  }

 private:
  std::size_t idx(int i, int j) const { return static_cast<std::size_t>(i * profile_.r + j); }
  static void check_same(const PolyMat& a, const PolyMat& b) {
    if (!(a.profile_ == b.profile_)) throw InputError("profile mismatch in polynomial matrix sum");
  }

  DegreeProfile profile_;
  std::vector<Poly<T>> e_;
};

/// Entrywise conversion of coefficients.
template <class To, class From>
PolyMat<To> convert_polymat(const PolyMat<From>& a) {
  PolyMat<To> out(a.profile());
  for (int i = 0; i < a.size(); ++i)
    for (int j = 0; j < a.size(); ++j)
      for (int k = 0; k <= a.profile().bound(i, j); ++k) {
        if constexpr (std::is_same_v<From, Rational>) {
          out.at(i, j, k) = from_rational<To>(a.at(i, j, k));
        } else {
          out.at(i, j, k) = To(a.at(i, j, k));
        }
      }
  return out;
}

/// Matrix of scalar polynomials times a constant matrix (either side).
template <class T>
PolyMat<T> multiply_constant_right(const PolyMat<T>& a, const Mat<T>& g) {
  const int r = a.size();
  PolyMat<T> out(DegreeProfile::uniform(r, a.profile().max_bound()));
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      Poly<T> acc(static_cast<std::size_t>(out.profile().d));
      for (int l = 0; l < r; ++l) acc += a(i, l) * g(l, j);
      out.set(i, j, acc);
    }
  return out;
}
template <class T>
PolyMat<T> multiply_constant_left(const Mat<T>& g, const PolyMat<T>& a) {
  const int r = a.size();
  PolyMat<T> out(DegreeProfile::uniform(r, a.profile().max_bound()));
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      Poly<T> acc(static_cast<std::size_t>(out.profile().d));
      for (int l = 0; l < r; ++l) acc += g(i, l) * a(l, j);
      out.set(i, j, acc);
    }
  return out;
}

/// h A h^{-1}-style conjugation by constants: returns left * A * right.
template <class T>
PolyMat<T> conjugate_constant(const Mat<T>& left, const PolyMat<T>& a, const Mat<T>& right) {
  return multiply_constant_right(multiply_constant_left(left, a), right);
}

template <class T>
Poly<T> trace(const PolyMat<T>& a) {
  Poly<T> acc(static_cast<std::size_t>(a.profile().max_bound()));
  for (int i = 0; i < a.size(); ++i) acc += a(i, i);
  return acc;
}

/// s_1..s_r with det(yI - A(x)) = y^r + s_1 y^{r-1} + ... + s_r (Faddeev-LeVerrier
/// over the polynomial ring; divisions are by integers only).
template <class T>
std::vector<Poly<T>> char_poly(const PolyMat<T>& a) {
  const int r = a.size();
  const DegreeProfile& p = a.profile();
  std::vector<Poly<T>> s;
  s.reserve(static_cast<std::size_t>(r));
  PolyMat<T> m(DegreeProfile::uniform(r, 0));  // M_0 = 0
  Poly<T> c_prev = Poly<T>::constant(T(1));
  for (int k = 1; k <= r; ++k) {
    // M_k = A M_{k-1} + c_{k-1} I
    PolyMat<T> am = a * m;
    PolyMat<T> mk(DegreeProfile::uniform(r, std::max(am.profile().d, static_cast<int>(c_prev.bound()))));
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) {
        Poly<T> e = am(i, j);
        if (i == j) e += c_prev;
        mk.set(i, j, e);
      }
    const Poly<T> tr = trace(a * mk);
    Poly<T> c = tr * T(-1) * (T(1) / T(k));
    const int b = (p.kind == ProfileKind::uniform ? p.d : p.max_bound()) * k;
    c = c.with_bound(static_cast<std::size_t>(std::max(b, c.degree())));
    s.push_back(c);
    c_prev = c;
    m = mk;
  }
  return s;
}

/// Bareiss fraction-free determinant over the polynomial ring. The exact
/// divisions are checked.
template <class T>
Poly<T> determinant(const PolyMat<T>& a) {
  const int r = a.size();
  std::vector<std::vector<Poly<T>>> m(static_cast<std::size_t>(r));
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) m[i].push_back(a(i, j));
  Poly<T> prev = Poly<T>::constant(T(1));
  int sign = 1;
  for (int k = 0; k + 1 < r; ++k) {
    if (m[k][k].is_zero()) {
      int sw = -1;
      for (int i = k + 1; i < r; ++i)
        if (!m[i][k].is_zero()) {
          sw = i;
          break;
        }
      if (sw < 0) return Poly<T>(0);
      std::swap(m[k], m[sw]);
      sign = -sign;
    }
    for (int i = k + 1; i < r; ++i)
      for (int j = k + 1; j < r; ++j) {
        Poly<T> num = m[i][j] * m[k][k] - m[i][k] * m[k][j];
        auto qr = divmod(num, prev);
        if (!qr.remainder.is_zero()) throw InternalError("Bareiss step left a remainder");
        m[i][j] = qr.quotient;
      }
    prev = m[k][k];
  }
  Poly<T> det = m[r - 1][r - 1];
  if (sign < 0) det = -det;
  return det;
}

template <class T>
PolyMat<T> matrix_power(const PolyMat<T>& a, int k) {
  PolyMat<T> out(DegreeProfile::uniform(a.size(), 0));
  for (int i = 0; i < a.size(); ++i) out.at(i, i, 0) = T(1);
  for (int n = 0; n < k; ++n) out = out * a;
  return out;
}

/// (1/k) Tr A(x)^k; its coefficients are the spectral Hamiltonians.
template <class T>
Poly<T> trace_power(const PolyMat<T>& a, int k) {
  if (k < 1 || k > a.size()) throw InputError("trace power index out of range");
  Poly<T> t = trace(matrix_power(a, k));
  return t * (T(1) / T(k));
}

/// Commutator [A(x), N] with a constant N, in A's profile when it fits.
template <class T>
PolyMat<T> commutator_constant(const PolyMat<T>& a, const Mat<T>& n) {
  PolyMat<T> c = multiply_constant_right(a, n) - multiply_constant_left(n, a);
  return c;
}

}  // namespace laxbench
