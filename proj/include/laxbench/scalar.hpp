#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <string_view>
#include <type_traits>

#include <boost/multiprecision/gmp.hpp>

namespace laxbench {

// Exact backend. Expression templates are disabled so the type behaves like a
// plain value type inside Eigen and generic code.
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;
// Floating backend.
using Complex = std::complex<double>;

enum class Backend { exact, floating };

struct InputError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};
struct InternalError : std::logic_error {
  using std::logic_error::logic_error;
};

/// Relative tolerance used by float-backend equality tests.
struct Tolerance {
  double eps = 1e-10;
};

template <class T>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
  static constexpr bool exact = true;
  using Base = Rational;
  static Rational from_rational(const Rational& q) { return q; }
  static const Rational& base(const Rational& v) { return v; }
  static double magnitude(const Rational& v) { return std::abs(v.convert_to<double>()); }
};

template <>
struct ScalarTraits<Complex> {
  static constexpr bool exact = false;
  using Base = Complex;
  static Complex from_rational(const Rational& q) { return {q.convert_to<double>(), 0.0}; }
  static const Complex& base(const Complex& v) { return v; }
  static double magnitude(const Complex& v) { return std::abs(v); }
};

template <>
struct ScalarTraits<double> {
  static constexpr bool exact = false;
  using Base = double;
  static double from_rational(const Rational& q) { return q.convert_to<double>(); }
  static const double& base(const double& v) { return v; }
  static double magnitude(double v) { return std::abs(v); }
};

template <class T>
inline constexpr bool is_exact_v = ScalarTraits<T>::exact;

template <class T>
using base_scalar_t = typename ScalarTraits<T>::Base;

template <class T>
T from_rational(const Rational& q) {
  return ScalarTraits<T>::from_rational(q);
}

/// Embeds a coefficient into a possibly richer ring U (e.g. rational into
/// complex or into a dual number).
template <class U, class T>
U lift(const T& c) {
  if constexpr (std::is_same_v<T, Rational> && !std::is_same_v<U, Rational>) {
    return ScalarTraits<U>::from_rational(c);
  } else {
    return U(c);
  }
}

/// Innermost value, stripping any derivative layers.
template <class T>
const base_scalar_t<T>& base_value(const T& v) {
  return ScalarTraits<T>::base(v);
}

template <class T>
double magnitude(const T& v) {
  return ScalarTraits<T>::magnitude(v);
}

inline bool is_zero(const Rational& v) { return v.is_zero(); }
inline bool is_zero(const Complex& v, Tolerance tol = {}) { return std::abs(v) <= tol.eps; }
inline bool is_zero(double v, Tolerance tol = {}) { return std::abs(v) <= tol.eps; }

inline bool approx_equal(const Complex& a, const Complex& b, Tolerance tol = {}) {
  const double scale = std::max({1.0, std::abs(a), std::abs(b)});
  return std::abs(a - b) <= tol.eps * scale;
}
inline bool approx_equal(const Rational& a, const Rational& b, Tolerance = {}) { return a == b; }

/// Zero test on the innermost value; exact for the rational backend.
template <class T>
bool value_is_zero(const T& v, Tolerance tol = {}) {
  if constexpr (is_exact_v<T>) {
    return is_zero(base_value(v));
  } else {
    return is_zero(base_value(v), tol);
  }
}

/// Parses "p/q", "p", or a decimal literal such as "-0.25" into a rational.
Rational parse_rational(std::string_view text);

/// Canonical text form: "p/q", or "p" when the denominator is one.
std::string to_string(const Rational& q);

inline Rational make_rational(long num, long den = 1) { return Rational(num) / Rational(den); }

}  // namespace laxbench
