#pragma once

#include <cstddef>
#include <map>
#include <ostream>
#include <span>
#include <utility>
#include <vector>

#include "laxbench/poly.hpp"

namespace laxbench {

/// Sparse exponent vector: (variable, exponent) pairs sorted by variable,
/// exponents strictly positive.
using Monomial = std::vector<std::pair<int, int>>;

inline Monomial monomial_product(const Monomial& a, const Monomial& b) {
  Monomial out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.push_back(b[j++]);
    } else {
      out.emplace_back(a[i].first, a[i].second + b[j].second);
      ++i;
      ++j;
    }
  }
  return out;
}

/// Sparse multivariate polynomial over coordinates indexed 0..n-1. Zero
/// coefficients are never stored.
template <class T>
class MPoly {
 public:
  using Terms = std::map<Monomial, T>;

  MPoly() = default;
  MPoly(int c) : MPoly(T(c)) {}  // NOLINT
  MPoly(const T& c) {            // NOLINT
    if (!coeff_is_zero(c)) terms_.emplace(Monomial{}, c);
  }

  static MPoly variable(int index, const T& coeff = T(1)) {
    MPoly p;
    if (!coeff_is_zero(coeff)) p.terms_.emplace(Monomial{{index, 1}}, coeff);
    return p;
  }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  /// Total degree; -1 for zero.
  int total_degree() const {
    int best = -1;
    for (const auto& [m, c] : terms_) {
      int deg = 0;
      for (const auto& [v, e] : m) deg += e;
      best = std::max(best, deg);
    }
    return best;
  }

  /// Largest variable index referenced, or -1.
  int max_variable() const {
    int best = -1;
    for (const auto& [m, c] : terms_)
      if (!m.empty()) best = std::max(best, m.back().first);
    return best;
  }

  void add_term(const Monomial& m, const T& c) {
    if (coeff_is_zero(c)) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (coeff_is_zero(it->second)) terms_.erase(it);
    }
  }

  MPoly& operator+=(const MPoly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  MPoly& operator-=(const MPoly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, T(-c));
    return *this;
  }
  MPoly& operator*=(const MPoly& o) { return *this = *this * o; }

  friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
  friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }
  friend MPoly operator-(MPoly a) {
    for (auto& [m, c] : a.terms_) c = -c;
    return a;
  }
  friend MPoly operator*(const MPoly& a, const MPoly& b) {
    MPoly out;
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) out.add_term(monomial_product(ma, mb), ca * cb);
    return out;
  }
  friend MPoly operator/(MPoly a, const T& s) {
    for (auto& [m, c] : a.terms_) c /= s;
    return a;
  }
  /// Division by a constant polynomial only.
  friend MPoly operator/(MPoly a, const MPoly& b) {
    if (b.terms_.size() != 1 || !b.terms_.begin()->first.empty()) {
      throw InputError("multivariate division is only defined by nonzero constants");
    }
    return a / b.terms_.begin()->second;
  }
  friend bool operator==(const MPoly& a, const MPoly& b) { return (a - b).is_zero(); }

  /// Partial derivative with respect to coordinate `index`.
  MPoly derivative(int index) const {
    MPoly out;
    for (const auto& [m, c] : terms_) {
      for (std::size_t k = 0; k < m.size(); ++k) {
        if (m[k].first != index) continue;
        Monomial dm = m;
        const int e = dm[k].second;
        if (e == 1) {
          dm.erase(dm.begin() + static_cast<std::ptrdiff_t>(k));
        } else {
          dm[k].second = e - 1;
        }
        out.add_term(dm, c * T(e));
      }
    }
    return out;
  }

  /// Evaluation at a point of any ring U that accepts T constants.
  template <class U>
  U operator()(std::span<const U> point) const {
    U acc = U(0);
    for (const auto& [m, c] : terms_) {
      U term = lift<U>(c);
      for (const auto& [v, e] : m)
        for (int k = 0; k < e; ++k) term = term * point[static_cast<std::size_t>(v)];
      acc = acc + term;
    }
    return acc;
  }
  template <class U>
  U operator()(const std::vector<U>& point) const {
    return (*this)(std::span<const U>(point));
  }

 private:
  Terms terms_;
};

// symbolic coefficients are as exact as their scalars
template <class T>
struct ScalarTraits<MPoly<T>> {
  static constexpr bool exact = ScalarTraits<T>::exact;
  using Base = MPoly<T>;
  static const MPoly<T>& base(const MPoly<T>& v) { return v; }
  static double magnitude(const MPoly<T>& v) {
    double m = 0.0;
    for (const auto& [mono, c] : v.terms()) m = std::max(m, ScalarTraits<T>::magnitude(c));
    return m;
  }
};

template <class T>
bool coeff_is_zero(const MPoly<T>& p) {
  return p.is_zero();
}

template <class T>
std::ostream& operator<<(std::ostream& os, const MPoly<T>& p) {
  if (p.is_zero()) return os << "0";
  bool first = true;
  for (const auto& [m, c] : p.terms()) {
    os << (first ? "" : " + ") << c;
    for (const auto& [v, e] : m) {
      os << "*x" << v;
      if (e > 1) os << "^" << e;
    }
    first = false;
  }
  return os;
}

}  // namespace laxbench
