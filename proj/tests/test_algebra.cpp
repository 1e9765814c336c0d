#include <doctest.h>

#include <random>

#include "laxbench/observable.hpp"
#include "laxbench/spaces.hpp"
#include "oracles.hpp"

using namespace laxbench;

namespace {

Rational q(long n, long d = 1) { return make_rational(n, d); }

Poly<Rational> random_poly(RationalSampler& rs, int deg) {
  Poly<Rational> p(static_cast<std::size_t>(deg));
  for (int k = 0; k <= deg; ++k) p[k] = rs();
  return p;
}

// A(x) = [[x, 1], [0, 2x]]
PolyMat<Rational> upper_example() {
  PolyMat<Rational> a(DegreeProfile::beauville(2, 1));
  a.at(0, 0, 1) = 1;
  a.at(0, 1, 0) = 1;
  a.at(1, 1, 1) = 2;
  return a;
}

}  // namespace

TEST_CASE("divided difference: constant phi gives the slope") {
  // f = a0 + a1 x, phi = 1 -> a1
  const auto t = divided_difference_kernel(Poly<Rational>{q(3), q(-5, 2)}, Poly<Rational>{q(1)});
  CHECK(t.coeff(0, 0) == q(-5, 2));
  for (std::size_t m = 0; m <= t.bound_x(); ++m)
    for (std::size_t n = 0; n <= t.bound_y(); ++n)
      if (m + n > 0) CHECK(t.coeff(m, n) == 0);
}

TEST_CASE("divided difference: f = phi vanishes") {
  const auto t = divided_difference_kernel(Poly<Rational>{q(0), q(1)}, Poly<Rational>{q(0), q(1)});
  CHECK(t.is_zero());
}

TEST_CASE("divided difference: x^2 against 1 is x + y") {
  const auto t = divided_difference_kernel(Poly<Rational>{q(0), q(0), q(1)}, Poly<Rational>{q(1)});
  CHECK(t.coeff(1, 0) == 1);
  CHECK(t.coeff(0, 1) == 1);
  CHECK(t.coeff(0, 0) == 0);
  CHECK(t.coeff(1, 1) == 0);
}

TEST_CASE("divided difference reconstructs its numerator") {
  RationalSampler rs(11);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto f = random_poly(rs, rs.integer(0, 4));
    const auto phi = random_poly(rs, rs.integer(0, 5));
    const auto t = divided_difference_kernel(f, phi);
    // (x - y) T(x, y) versus f(x) phi(y) - phi(x) f(y), coefficientwise
    const auto num = BiPoly<Rational>::outer(f, phi) - BiPoly<Rational>::outer(phi, f);
    const std::size_t bx = std::max(num.bound_x(), t.bound_x() + 1), by = std::max(num.bound_y(), t.bound_y() + 1);
    bool ok = true;
    for (std::size_t m = 0; m <= bx; ++m)
      for (std::size_t n = 0; n <= by; ++n) {
        Rational lhs = 0;
        if (m >= 1) lhs += t.coeff(m - 1, n);
        if (n >= 1) lhs -= t.coeff(m, n - 1);
        if (lhs != num.coeff(m, n)) ok = false;
      }
    REQUIRE(ok);
    // the numerator is antisymmetric under x <-> y
    for (std::size_t m = 0; m <= num.bound_x(); ++m)
      for (std::size_t n = 0; n <= num.bound_y(); ++n) REQUIRE(num.coeff(m, n) == -num.coeff(n, m));
  }
}

TEST_CASE("divided difference agrees with the geometric-series expansion") {
  RationalSampler rs(12);
  for (int trial = 0; trial < 200; ++trial) {
    const auto f = random_poly(rs, rs.integer(0, 4));
    const auto phi = random_poly(rs, rs.integer(0, 4));
    const auto t = divided_difference_kernel(f, phi);
    const auto g = oracle::kernel(f.coeffs(), phi.coeffs());
    for (std::size_t m = 0; m <= t.bound_x(); ++m)
      for (std::size_t n = 0; n <= t.bound_y(); ++n) {
        auto it = g.find({int(m), int(n)});
        REQUIRE(t.coeff(m, n) == (it == g.end() ? Rational(0) : it->second));
      }
  }
}

TEST_CASE("characteristic polynomial of the upper-triangular example") {
  const auto s = char_poly(upper_example());
  REQUIRE(s.size() == 2);
  CHECK(s[0] == Poly<Rational>{q(0), q(-3)});
  CHECK(s[1] == Poly<Rational>{q(0), q(0), q(2)});
}

TEST_CASE("characteristic polynomial of zero and of a diagonal constant") {
  const PolyMat<Rational> z(DegreeProfile::beauville(3, 2));
  for (const auto& si : char_poly(z)) CHECK(si.is_zero());

  PolyMat<Rational> a(DegreeProfile::beauville(3, 0));
  a.at(0, 0, 0) = 2;
  a.at(1, 1, 0) = -1;
  a.at(2, 2, 0) = q(1, 3);
  const auto s = char_poly(a);
  // (-1)^k e_k(2, -1, 1/3)
  CHECK(s[0][0] == -(q(2) + q(-1) + q(1, 3)));
  CHECK(s[1][0] == q(2) * q(-1) + q(2) * q(1, 3) + q(-1) * q(1, 3));
  CHECK(s[2][0] == -(q(2) * q(-1) * q(1, 3)));
}

TEST_CASE("trace powers") {
  const auto a = upper_example();
  CHECK(trace_power(a, 1) == Poly<Rational>{q(0), q(3)});
  CHECK(trace_power(a, 2) == Poly<Rational>{q(0), q(0), q(5, 2)});
  CHECK_THROWS_AS(trace_power(a, 3), InputError);
  CHECK_THROWS_AS(trace_power(a, 0), InputError);

  PolyMat<Rational> dgl(DegreeProfile::beauville(3, 0));
  dgl.at(0, 0, 0) = 2;
  dgl.at(1, 1, 0) = 3;
  dgl.at(2, 2, 0) = -1;
  CHECK(trace_power(dgl, 3)[0] == (q(8) + q(27) + q(-1)) / 3);
}

TEST_CASE("polynomial matrix plumbing") {
  RationalSampler rs(13);
  const auto a = random_polymat(rs, DegreeProfile::beauville(3, 2));
  CHECK(a + PolyMat<Rational>(a.profile()) == a);
  for (int k = 0; k <= 2; ++k)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) CHECK(a.coefficient(k)(i, j) == a.at(i, j, k));
  // evaluation commutes with the characteristic polynomial
  const Rational x0 = q(-2, 3);
  const auto s = char_poly(a);
  const auto sc = char_poly_coefficients(a.evaluate(x0));
  for (int i = 0; i < 3; ++i) CHECK(s[i](x0) == sc[i]);
  CHECK_THROWS_AS(a + PolyMat<Rational>(DegreeProfile::beauville(2, 2)), InputError);
}

TEST_CASE("forward derivatives match symbolic partials exactly") {
  RationalSampler rs(14);
  const int n = 4;
  for (int trial = 0; trial < 50; ++trial) {
    MPoly<Rational> p;
    for (int term = 0; term < 6; ++term) {
      MPoly<Rational> m(rs());
      for (int f = rs.integer(0, 3); f > 0; --f) m = m * MPoly<Rational>::variable(rs.integer(0, n - 1));
      p += m;
    }
    std::vector<Rational> x(n);
    for (auto& v : x) v = rs();
    const auto vg = value_gradient(observable_from_mpoly("p", p), x);
    CHECK(vg.value == p(x));
    for (int i = 0; i < n; ++i) CHECK(vg.gradient[i] == p.derivative(i)(x));
  }
}

TEST_CASE("complex forward derivatives match central differences") {
  RationalSampler rs(15);
  const int n = 3;
  MPoly<Rational> p = MPoly<Rational>::variable(0) * MPoly<Rational>::variable(1) * MPoly<Rational>::variable(2) +
                      MPoly<Rational>::variable(0) * MPoly<Rational>::variable(0) * q(3, 2) - MPoly<Rational>::variable(2);
  const auto obs = observable_from_mpoly("p", p);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Complex> x(n);
    for (auto& v : x) v = Complex(rs().convert_to<double>(), rs().convert_to<double>());
    const auto vg = value_gradient(obs, x);
    const double h = 1e-6;
    for (int i = 0; i < n; ++i) {
      auto xp = x, xm = x;
      xp[i] += h;
      xm[i] -= h;
      const Complex fd = (p(xp) - p(xm)) / (2 * h);
      CHECK(std::abs(fd - vg.gradient[i]) <= 1e-6 * std::max(1.0, std::abs(vg.gradient[i])));
    }
  }
}

TEST_CASE("rational parsing and printing") {
  CHECK(parse_rational("3/6") == q(1, 2));
  CHECK(parse_rational("-0.25") == q(-1, 4));
  CHECK(parse_rational("7") == q(7));
  CHECK(to_string(q(-4, 6)) == "-2/3");
  CHECK(to_string(q(5)) == "5");
  CHECK_THROWS_AS(parse_rational("1/0"), InputError);
  CHECK_THROWS_AS(parse_rational("abc"), InputError);
}
