#pragma once

#include <algorithm>
#include <cstddef>
#include <ostream>
#include <utility>
#include <vector>

#include "laxbench/dual.hpp"
#include "laxbench/scalar.hpp"

namespace laxbench {

// Structural zero tests for polynomial coefficients. Float coefficients are
// compared exactly here; tolerance-aware tests live with the callers.
inline bool coeff_is_zero(const Rational& v) { return v.is_zero(); }
inline bool coeff_is_zero(const Complex& v) { return v == Complex(0.0); }
inline bool coeff_is_zero(double v) { return v == 0.0; }
template <class T>
bool coeff_is_zero(const Dual<T>& v) {
  if (!coeff_is_zero(v.value())) return false;
  return std::all_of(v.gradient().begin(), v.gradient().end(),
                     [](const T& g) { return coeff_is_zero(g); });
}

/// Zero test for a coefficient that cancels exactly over the rationals: structural
/// on the exact backend, rounding-level relative to `scale` on a float one.
template <class T>
bool negligible(const T& v, double scale) {
  if constexpr (is_exact_v<T>)
    return coeff_is_zero(v);
  else
    return magnitude(base_value(v)) <= 1e-9 * std::max(scale, 1.0);
}

template <class T>
double coeff_scale(const std::vector<T>& c) {
  double s = 0.0;
  if constexpr (!is_exact_v<T>)
    for (const auto& v : c) s = std::max(s, magnitude(base_value(v)));
  return s;
}

/// Univariate polynomial c_0 + c_1 x + ... + c_D x^D with a declared degree
/// bound D. Storage always holds D+1 coefficients; zero padding is allowed.
template <class T>
class Poly {
 public:
  using coeff_type = T;

  Poly() : c_(1, T(0)) {}
  explicit Poly(std::size_t bound) : c_(bound + 1, T(0)) {}
  Poly(std::vector<T> coeffs) : c_(std::move(coeffs)) {  // NOLINT
    if (c_.empty()) c_.push_back(T(0));
  }
  Poly(std::initializer_list<T> coeffs) : c_(coeffs) {
    if (c_.empty()) c_.push_back(T(0));
  }

  static Poly constant(const T& v, std::size_t bound = 0) {
    Poly p(bound);
    p.c_[0] = v;
    return p;
  }
  static Poly monomial(std::size_t k, const T& coeff = T(1)) {
    Poly p(k);
    p.c_[k] = coeff;
    return p;
  }

  std::size_t bound() const { return c_.size() - 1; }
  std::size_t size() const { return c_.size(); }

  /// Largest k with a nonzero coefficient, or -1 for the zero polynomial.
  int degree() const {
    for (std::size_t k = c_.size(); k-- > 0;) {
      if (!coeff_is_zero(c_[k])) return static_cast<int>(k);
    }
    return -1;
  }
  bool is_zero() const { return degree() < 0; }

  const T& operator[](std::size_t k) const { return c_[k]; }
  T& operator[](std::size_t k) { return c_[k]; }
  T coeff(std::size_t k) const { return k < c_.size() ? c_[k] : T(0); }
  const std::vector<T>& coeffs() const { return c_; }

  /// Re-declares the bound; shrinking requires the dropped coefficients to vanish.
  Poly with_bound(std::size_t bound) const {
    Poly out(bound);
    const double scale = coeff_scale(c_);
    for (std::size_t k = 0; k < c_.size(); ++k) {
      if (k <= bound) {
        out.c_[k] = c_[k];
      } else if (!negligible(c_[k], scale)) {
        throw InputError("polynomial degree exceeds requested bound");
      }
    }
    return out;
  }

  template <class U>
  U operator()(const U& a) const {
    U acc = lift<U>(c_.back());
    for (std::size_t k = c_.size() - 1; k-- > 0;) acc = acc * a + lift<U>(c_[k]);
    return acc;
  }

  Poly& operator+=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), T(0));
    for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), T(0));
    for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
    return *this;
  }
  Poly& operator*=(const T& s) {
    for (auto& v : c_) v *= s;
    return *this;
  }

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator-(Poly a) {
    for (auto& v : a.c_) v = -v;
    return a;
  }
  friend Poly operator*(Poly a, const T& s) { return a *= s; }
  friend Poly operator*(const T& s, Poly a) {
    for (auto& v : a.c_) v = s * v;
    return a;
  }
  friend Poly operator*(const Poly& a, const Poly& b) {
    Poly out(a.bound() + b.bound());
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (coeff_is_zero(a.c_[i])) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) out.c_[i + j] += a.c_[i] * b.c_[j];
    }
    return out;
  }
  friend bool operator==(const Poly& a, const Poly& b) {
    const std::size_t n = std::max(a.c_.size(), b.c_.size());
    for (std::size_t k = 0; k < n; ++k) {
      if (!coeff_is_zero(T(a.coeff(k) - b.coeff(k)))) return false;
    }
    return true;
  }

 private:
  std::vector<T> c_;
};

template <class T>
Poly<T> derivative(const Poly<T>& p) {
  if (p.bound() == 0) return Poly<T>(0);
  Poly<T> out(p.bound() - 1);
  for (std::size_t k = 1; k <= p.bound(); ++k) out[k - 1] = p[k] * T(static_cast<int>(k));
  return out;
}

/// q(x) = p(x + c), same bound.
template <class T>
Poly<T> shift(const Poly<T>& p, const T& c) {
  Poly<T> out(p.bound());
  // Horner in the shifted variable: out = (...(c_D)(x+c) + c_{D-1})(x+c) ...
  for (std::size_t k = p.size(); k-- > 0;) {
    Poly<T> next(p.bound());
    for (std::size_t j = 0; j < p.bound(); ++j) {
      next[j + 1] += out[j];
      next[j] += out[j] * c;
    }
    next[0] += p[k];
    out = std::move(next);
  }
  return out;
}

template <class T>
struct PolyDivision {
  Poly<T> quotient;
  Poly<T> remainder;
};

/// Euclidean division by a divisor with invertible leading coefficient.
template <class T>
PolyDivision<T> divmod(const Poly<T>& num, const Poly<T>& den) {
  const int dd = den.degree();
  if (dd < 0) throw InputError("polynomial division by zero");
  const int dn = num.degree();
  const std::size_t rem_bound = dd > 0 ? static_cast<std::size_t>(dd - 1) : 0;
  if (dn < dd) {
    Poly<T> r(std::max(num.bound(), rem_bound));
    for (std::size_t k = 0; k < num.size(); ++k) r[k] = num[k];
    return {Poly<T>(0), r.with_bound(std::min(r.bound(), rem_bound))};
  }
  std::vector<T> r = num.coeffs();
  Poly<T> q(static_cast<std::size_t>(dn - dd));
  const T lead = den[static_cast<std::size_t>(dd)];
  for (int k = dn - dd; k >= 0; --k) {
    const T f = r[static_cast<std::size_t>(k + dd)] / lead;
    q[static_cast<std::size_t>(k)] = f;
    for (int j = 0; j <= dd; ++j) {
      r[static_cast<std::size_t>(k + j)] -= f * den[static_cast<std::size_t>(j)];
    }
  }
  Poly<T> rem(rem_bound);
  for (std::size_t k = 0; k <= rem_bound && k < r.size(); ++k) rem[k] = r[k];
  return {q, rem};
}

/// Synthetic division by (x - c): returns the quotient and p(c).
template <class T>
std::pair<Poly<T>, T> divide_linear(const Poly<T>& p, const T& c) {
  if (p.bound() == 0) return {Poly<T>(0), p[0]};
  Poly<T> q(p.bound() - 1);
  T acc = p[p.bound()];
  for (std::size_t k = p.bound(); k-- > 0;) {
    q[k] = acc;
    acc = p[k] + acc * c;
  }
  return {q, acc};
}

template <class T>
std::ostream& operator<<(std::ostream& os, const Poly<T>& p) {
  os << "[";
  for (std::size_t k = 0; k < p.size(); ++k) os << (k ? ", " : "") << p[k];
  return os << "]";
}

/// Bivariate polynomial sum c_{m,n} x^m y^n on a (Dx+1) x (Dy+1) grid.
template <class T>
class BiPoly {
 public:
  BiPoly() : BiPoly(0, 0) {}
  BiPoly(std::size_t bound_x, std::size_t bound_y)
      : bx_(bound_x), by_(bound_y), c_((bound_x + 1) * (bound_y + 1), T(0)) {}

  std::size_t bound_x() const { return bx_; }
  const std::vector<T>& coeffs() const { return c_; }
  std::size_t bound_y() const { return by_; }

  const T& operator()(std::size_t m, std::size_t n) const { return c_[m * (by_ + 1) + n]; }
  T& operator()(std::size_t m, std::size_t n) { return c_[m * (by_ + 1) + n]; }
  T coeff(std::size_t m, std::size_t n) const {
    return (m <= bx_ && n <= by_) ? (*this)(m, n) : T(0);
  }

  bool is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const T& v) { return coeff_is_zero(v); });
  }

  /// p(x) q(y).
  static BiPoly outer(const Poly<T>& px, const Poly<T>& qy) {
    BiPoly out(px.bound(), qy.bound());
    for (std::size_t m = 0; m <= px.bound(); ++m) {
      if (coeff_is_zero(px[m])) continue;
      for (std::size_t n = 0; n <= qy.bound(); ++n) out(m, n) = px[m] * qy[n];
    }
    return out;
  }

  BiPoly with_bounds(std::size_t bx, std::size_t by) const {
    BiPoly out(bx, by);
    const double scale = coeff_scale(c_);
    for (std::size_t m = 0; m <= bx_; ++m) {
      for (std::size_t n = 0; n <= by_; ++n) {
        if (m <= bx && n <= by) {
          out(m, n) = (*this)(m, n);
        } else if (!negligible((*this)(m, n), scale)) {
          throw InternalError("bivariate polynomial exceeds requested bounds");
        }
      }
    }
    return out;
  }

  /// T(y, x): transposes the coefficient grid.
  BiPoly swapped() const {
    BiPoly out(by_, bx_);
    for (std::size_t m = 0; m <= bx_; ++m)
      for (std::size_t n = 0; n <= by_; ++n) out(n, m) = (*this)(m, n);
    return out;
  }

  template <class U>
  U operator()(const U& x, const U& y) const {
    U acc = U(0);
    for (std::size_t m = bx_ + 1; m-- > 0;) {
      U row = U(0);
      for (std::size_t n = by_ + 1; n-- > 0;) row = row * y + lift<U>((*this)(m, n));
      acc = acc * x + row;
    }
    return acc;
  }

  BiPoly& operator+=(const BiPoly& o) {
    grow(o.bx_, o.by_);
    for (std::size_t m = 0; m <= o.bx_; ++m)
      for (std::size_t n = 0; n <= o.by_; ++n) (*this)(m, n) += o(m, n);
    return *this;
  }
  BiPoly& operator-=(const BiPoly& o) {
    grow(o.bx_, o.by_);
    for (std::size_t m = 0; m <= o.bx_; ++m)
      for (std::size_t n = 0; n <= o.by_; ++n) (*this)(m, n) -= o(m, n);
    return *this;
  }
  BiPoly& operator*=(const T& s) {
    for (auto& v : c_) v *= s;
    return *this;
  }
  friend BiPoly operator+(BiPoly a, const BiPoly& b) { return a += b; }
  friend BiPoly operator-(BiPoly a, const BiPoly& b) { return a -= b; }
  friend BiPoly operator-(BiPoly a) {
    for (auto& v : a.c_) v = -v;
    return a;
  }
  friend BiPoly operator*(BiPoly a, const T& s) { return a *= s; }
  friend BiPoly operator*(const BiPoly& a, const BiPoly& b) {
    BiPoly out(a.bx_ + b.bx_, a.by_ + b.by_);
    for (std::size_t m = 0; m <= a.bx_; ++m)
      for (std::size_t n = 0; n <= a.by_; ++n) {
        const T& av = a(m, n);
        if (coeff_is_zero(av)) continue;
        for (std::size_t p = 0; p <= b.bx_; ++p)
          for (std::size_t q = 0; q <= b.by_; ++q) out(m + p, n + q) += av * b(p, q);
      }
    return out;
  }
  friend bool operator==(const BiPoly& a, const BiPoly& b) {
    const std::size_t bx = std::max(a.bx_, b.bx_), by = std::max(a.by_, b.by_);
    for (std::size_t m = 0; m <= bx; ++m)
      for (std::size_t n = 0; n <= by; ++n)
        if (!coeff_is_zero(T(a.coeff(m, n) - b.coeff(m, n)))) return false;
    return true;
  }

 private:
  void grow(std::size_t bx, std::size_t by) {
    if (bx <= bx_ && by <= by_) return;
    BiPoly bigger(std::max(bx, bx_), std::max(by, by_));
    for (std::size_t m = 0; m <= bx_; ++m)
      for (std::size_t n = 0; n <= by_; ++n) bigger(m, n) = (*this)(m, n);
    *this = std::move(bigger);
  }

  std::size_t bx_, by_;
  std::vector<T> c_;
};

/// Exact quotient N(x,y) / (x - y). A nonzero remainder is a contract
/// violation and raises InternalError.
template <class T>
BiPoly<T> divide_by_x_minus_y(const BiPoly<T>& num) {
  const std::size_t bx = num.bound_x(), by = num.bound_y();
  if (bx == 0 || by == 0) {
    if (!num.is_zero()) throw InternalError("numerator is not divisible by (x - y)");
    return BiPoly<T>(0, 0);
  }
  // Treat num as a polynomial in x over T[y]; synthetic division at x = y.
  const std::size_t wide = bx + by;
  std::vector<Poly<T>> q(bx, Poly<T>(wide));
  Poly<T> carry(wide);
  for (std::size_t a = bx + 1; a-- > 1;) {
    // q_{a-1} = num_a + y * q_a
    Poly<T> next(wide);
    for (std::size_t n = 0; n <= by; ++n) next[n] = num(a, n);
    for (std::size_t n = 0; n + 1 <= wide; ++n) next[n + 1] += carry[n];
    q[a - 1] = next;
    carry = std::move(next);
  }
  // remainder = num_0 + y q_0
  const double scale = coeff_scale(num.coeffs());
  for (std::size_t n = 0; n <= wide; ++n) {
    T rem = (n <= by ? num(0, n) : T(0));
    if (n >= 1) rem += carry[n - 1];
    const bool zero = negligible(rem, scale);
    if (!zero) throw InternalError("numerator is not divisible by (x - y)");
  }
  BiPoly<T> out(bx - 1, wide);
  for (std::size_t a = 0; a < bx; ++a)
    for (std::size_t n = 0; n <= wide; ++n) out(a, n) = q[a][n];
  return out.with_bounds(bx - 1, by - 1);
}

/// (f(x) phi(y) - phi(x) f(y)) / (x - y), computed by exact division.
template <class T>
BiPoly<T> divided_difference_kernel(const Poly<T>& f, const Poly<T>& phi) {
  BiPoly<T> num = BiPoly<T>::outer(f, phi) - BiPoly<T>::outer(phi, f);
  BiPoly<T> q = divide_by_x_minus_y(num);
  const std::size_t total = f.bound() + phi.bound();
  const std::size_t b = total > 0 ? total - 1 : 0;
  if (q.bound_x() > b || q.bound_y() > b) return q;
  BiPoly<T> out(b, b);
  out += q;
  return out;
}

}  // namespace laxbench
