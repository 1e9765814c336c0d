#pragma once

#include <algorithm>
#include <cstddef>
#include <utility>
#include <vector>

#include "laxbench/scalar.hpp"

namespace laxbench {

/// Forward-mode dual number: a value plus its gradient with respect to an
/// active coordinate set. An empty gradient stands for the zero gradient, so
/// constants carry no storage. Nesting (Dual<Dual<T>>) yields second
/// derivatives.
template <class T>
class Dual {
 public:
  using value_type = T;

  Dual() : value_(0) {}
  Dual(const T& v) : value_(v) {}  // NOLINT: implicit lift of constants
  Dual(int v) : value_(v) {}       // NOLINT
  template <class U>
    requires(!std::is_same_v<U, T> && !std::is_same_v<U, int> && std::is_constructible_v<T, U>)
  Dual(const U& v) : value_(v) {}  // NOLINT
  Dual(T v, std::vector<T> grad) : value_(std::move(v)), grad_(std::move(grad)) {}

  /// The i-th coordinate of an n-dimensional active set, evaluated at v.
  static Dual variable(const T& v, std::size_t i, std::size_t n) {
    std::vector<T> g(n, T(0));
    g[i] = T(1);
    return Dual(v, std::move(g));
  }

  const T& value() const { return value_; }
  const std::vector<T>& gradient() const { return grad_; }

  /// Partial derivative i; zero outside the stored range.
  T partial(std::size_t i) const { return i < grad_.size() ? grad_[i] : T(0); }

  Dual& operator+=(const Dual& o) {
    value_ += o.value_;
    axpy(T(1), o.grad_);
    return *this;
  }
  Dual& operator-=(const Dual& o) {
    value_ -= o.value_;
    axpy(T(-1), o.grad_);
    return *this;
  }
  Dual& operator*=(const Dual& o) {
    // d(ab) = a db + b da
    for (auto& g : grad_) g *= o.value_;
    axpy(value_, o.grad_);
    value_ *= o.value_;
    return *this;
  }
  Dual& operator/=(const Dual& o) {
    // d(a/b) = (da - (a/b) db) / b
    T q = value_ / o.value_;
    axpy(-q, o.grad_);
    for (auto& g : grad_) g /= o.value_;
    value_ = std::move(q);
    return *this;
  }

  friend Dual operator+(Dual a, const Dual& b) { return a += b; }
  friend Dual operator-(Dual a, const Dual& b) { return a -= b; }
  friend Dual operator*(Dual a, const Dual& b) { return a *= b; }
  friend Dual operator/(Dual a, const Dual& b) { return a /= b; }
  friend Dual operator-(Dual a) {
    a.value_ = -a.value_;
    for (auto& g : a.grad_) g = -g;
    return a;
  }
  friend Dual operator+(const Dual& a) { return a; }

  // Equality compares values only; used for structural zero tests.
  friend bool operator==(const Dual& a, const Dual& b) { return a.value_ == b.value_; }

 private:
  void axpy(const T& s, const std::vector<T>& g) {
    if (g.empty()) return;
    if (grad_.size() < g.size()) grad_.resize(g.size(), T(0));
    for (std::size_t i = 0; i < g.size(); ++i) grad_[i] += s * g[i];
  }

  T value_;
  std::vector<T> grad_;
};

template <class T>
struct ScalarTraits<Dual<T>> {
  static constexpr bool exact = ScalarTraits<T>::exact;
  using Base = typename ScalarTraits<T>::Base;
  static Dual<T> from_rational(const Rational& q) { return Dual<T>(ScalarTraits<T>::from_rational(q)); }
  static const Base& base(const Dual<T>& v) { return ScalarTraits<T>::base(v.value()); }
  static double magnitude(const Dual<T>& v) { return ScalarTraits<T>::magnitude(v.value()); }
};

/// Seeds every coordinate of x as an active variable.
template <class T>
std::vector<Dual<T>> make_variables(const std::vector<T>& x) {
  std::vector<Dual<T>> out;
  out.reserve(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out.push_back(Dual<T>::variable(x[i], i, x.size()));
  return out;
}

/// Seeds for second derivatives: result.value().partial(a) = dF/dx_a and
/// result.partial(b).partial(a) = d2F/dx_b dx_a.
template <class T>
std::vector<Dual<Dual<T>>> make_second_order_variables(const std::vector<T>& x) {
  const std::size_t n = x.size();
  std::vector<Dual<Dual<T>>> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Dual<T>> g(n, Dual<T>(T(0)));
    g[i] = Dual<T>(T(1));
    out.emplace_back(Dual<T>::variable(x[i], i, n), std::move(g));
  }
  return out;
}

}  // namespace laxbench
