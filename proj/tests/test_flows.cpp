#include <doctest.h>

#include "laxbench/flows.hpp"
#include "laxbench/lax.hpp"
#include "laxbench/spaces.hpp"
#include "laxbench/suites.hpp"

using namespace laxbench;

namespace {

PolyMat<Rational> point(System s, int r, int d, std::uint64_t seed) {
  return random_point(point_profile(s, r, d), seed).matrix;
}

Mat<Rational> mat_pow(const Mat<Rational>& m, int k) {
  Mat<Rational> out = m;
  for (int i = 1; i < k; ++i) out = Mat<Rational>(out * m);
  return out;
}

// sum_i a^i Y_i(x) against [A(x), A(a)^k] / (x - a), at two rational values
bool y_fields_evaluate_correctly(const PolyMat<Rational>& a, int k, const Rational& x, const Rational& t) {
  const auto ys = y_fields(a, k);
  const Mat<Rational> ax = a.evaluate(x), at = mat_pow(a.evaluate(t), k);
  const Mat<Rational> want = Mat<Rational>(ax * at - at * ax) / Rational(x - t);
  Mat<Rational> got = zero_matrix<Rational>(a.size(), a.size());
  Rational tp = 1;
  for (const auto& y : ys) {
    got += y.evaluate(x) * tp;
    tp *= t;
  }
  return got == want;
}

}  // namespace

TEST_CASE("first Y field for linear matrices is the commutator of the coefficients") {
  const auto a = point(System::beauville, 2, 1, 5);
  const auto ys = y_fields(a, 1);
  REQUIRE(ys.size() == 1);
  const Mat<Rational> a0 = a.coefficient(0), a1 = a.coefficient(1);
  const Mat<Rational> c = a1 * a0 - a0 * a1;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      CHECK(ys[0].at(i, j, 0) == c(i, j));
      CHECK(ys[0].at(i, j, 1) == 0);
    }
}

TEST_CASE("scalar matrices have vanishing Y fields") {
  PolyMat<Rational> a(DegreeProfile::beauville(3, 2));
  for (int i = 0; i < 3; ++i) {
    a.at(i, i, 0) = 2;
    a.at(i, i, 2) = make_rational(-1, 3);
  }
  for (int k = 1; k <= 2; ++k)
    for (const auto& y : y_fields(a, k)) CHECK(y == PolyMat<Rational>(a.profile()));
  CHECK_THROWS_AS(y_fields(a, 3), InputError);
  CHECK_THROWS_AS(y_fields(a, 0), InputError);
}

TEST_CASE("Y fields satisfy their generating identity and stay in the profile") {
  RationalSampler rs(31);
  for (System s : {System::beauville, System::bv})
    for (int r = 2; r <= 3; ++r)
      for (int d = 1; d <= 3; ++d)
        for (std::uint64_t seed = 0; seed < 100; ++seed) {
          const auto a = point(s, r, d, 500 + seed);
          for (int k = 1; k < r; ++k) {
            for (const auto& y : y_fields(a, k)) REQUIRE(membership(y, a.profile()));
            if (seed % 10 == 0) {
              Rational x = rs(), t = rs();
              while (t == x) t = rs();
              REQUIRE(y_fields_evaluate_correctly(a, k, x, t));
            }
          }
        }
}

TEST_CASE("top Y field is a constant gauge direction") {
  // Y^(k)_{dk-1} = [A(x), -A_d^k]
  for (int r = 2; r <= 3; ++r)
    for (int d = 1; d <= 3; ++d) {
      const auto a = point(System::beauville, r, d, 40 + d);
      for (int k = 1; k < r; ++k) {
        const auto ys = y_fields(a, k);
        const Mat<Rational> n = -mat_pow(a.coefficient(d), k);
        CHECK(ys.back() == commutator_constant(a, n));
        const auto dec = orbit_decompose(ys.back().flatten(CoordSet(a.profile())), a, OrbitModel::pgl(r));
        CHECK(dec.orbit_tangent);
      }
    }
}

TEST_CASE("orbit decomposition recovers the generating constant") {
  RationalSampler rs(32);
  for (int r = 2; r <= 3; ++r) {
    const auto a = point(System::beauville, r, 2, 77);
    Mat<Rational> n = zero_matrix<Rational>(r, r);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) n(i, j) = rs();
    Rational tr = 0;
    for (int i = 0; i < r; ++i) tr += n(i, i);
    n(r - 1, r - 1) -= tr;  // traceless
    const auto dec = orbit_decompose(commutator_constant(a, n).flatten(CoordSet(a.profile())), a, OrbitModel::pgl(r));
    REQUIRE(dec.orbit_tangent);
    // generators: off-diagonal units row by row, then E_ii - E_{i+1,i+1}
    Mat<Rational> back = zero_matrix<Rational>(r, r);
    std::size_t m = 0;
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j)
        if (i != j) back(i, j) = dec.coefficients[m++];
    for (int i = 0; i + 1 < r; ++i) {
      back(i, i) += dec.coefficients[m];
      back(i + 1, i + 1) -= dec.coefficients[m++];
    }
    CHECK(back == n);
  }
}

TEST_CASE("lowest Y field leaves the orbit once d >= 2") {
  for (int r = 2; r <= 3; ++r)
    for (int d = 2; d <= 3; ++d) {
      const auto a = point(System::beauville, r, d, 90 + d);
      const auto y0 = y_fields(a, 1).front();
      CHECK_FALSE(orbit_decompose(y0.flatten(CoordSet(a.profile())), a, OrbitModel::pgl(r)).orbit_tangent);
    }
}

TEST_CASE("hamiltonian fields against Y fields") {
  SUBCASE("first trace power is a Casimir") {
    const auto a = point(System::beauville, 2, 2, 3);
    for (int j = 0; j <= 2; ++j) {
      const auto c = lemma_ham_y_check(a, 1, j, Phi::monomial(2, 1), System::beauville);
      CHECK(c.passed);
      for (const auto& v : c.lhs) CHECK(v == 0);
    }
  }
  SUBCASE("phi = x picks out the shifted field") {
    const auto a = point(System::beauville, 2, 2, 4);
    const auto c = lemma_ham_y_check(a, 2, 1, Phi::monomial(2, 1), System::beauville);
    CHECK(c.passed);
    CHECK(c.exact_equality);
    const CoordSet cs(DegreeProfile::bullet(2, 2));
    CHECK(c.rhs == y_fields(a, 1)[0].with_profile(cs.profile()).flatten(cs));
  }
  SUBCASE("every index, generic phi") {
    RationalSampler rs(33);
    for (System s : {System::beauville, System::bv})
      for (int r = 2; r <= 3; ++r)
        for (int d = 1; d <= 2; ++d) {
          const auto a = point(s, r, d, 123);
          const Phi phi = random_phi(d, d + (s == System::bv ? 0 : 2), rs);
          for (int k = 1; k <= r; ++k)
            for (int j = 0; j <= k * d; ++j) {
              INFO("system " << system_name(s) << " r " << r << " d " << d << " k " << k << " j " << j);
              const auto c = lemma_ham_y_check(a, k, j, phi, s);
              CHECK(c.passed);
              if (s == System::beauville) CHECK(c.exact_equality);
            }
        }
  }
  SUBCASE("complex backend") {
    const auto a = convert_polymat<Complex>(point(System::beauville, 2, 2, 8));
    for (int j = 0; j <= 4; ++j) CHECK(lemma_ham_y_check(a, 2, j, Phi::monomial(2, 3), System::beauville).passed);
  }
}

TEST_CASE("ladder of trace powers") {
  CHECK(multi_hamiltonian_check(point(System::beauville, 2, 2, 1), 1, 0, System::beauville).passed);
  CHECK(multi_hamiltonian_check(point(System::beauville, 3, 2, 2), 2, 2, System::beauville).passed);
  const auto bv = multi_hamiltonian_check(point(System::bv, 2, 3, 3), 1, 1, System::bv);
  CHECK(bv.passed);
  CHECK(bv.per_structure.size() == 6);
  CHECK_THROWS_AS(multi_hamiltonian_check(point(System::beauville, 2, 2, 1), 1, 1, System::beauville), InputError);
}

TEST_CASE("Y fields span as many directions as the genus") {
  CHECK(y_span_rank(point(System::beauville, 2, 3, 10), System::beauville) == 2);
  CHECK(y_span_rank(point(System::beauville, 3, 2, 11), System::beauville) == 4);
  CHECK(y_span_rank(point(System::beauville, 2, 1, 12), System::beauville) == 0);
  for (int d = 2; d <= 3; ++d) CHECK(y_span_rank(point(System::beauville, 2, d, 13), System::beauville) == genus(2, d));
}

TEST_CASE("Lax integration") {
  RationalSampler rs(34);
  for (ChartSystem sys : {ChartSystem::s_infty, ChartSystem::s_prime_infty}) {
    const int d = 3;
    const auto s0 = chart_point(sys, d, random_chart(sys, d, rs));

    const auto still = lax_integrate(sys, s0, make_rational(1, 2), 0.0, 0);
    REQUIRE(still.states.size() == 1);
    CHECK(still.max_drift == 0.0);
    const auto v0 = chart_values(sys, d, s0);
    for (std::size_t n = 0; n < v0.size(); ++n) CHECK(still.states[0][n] == Complex(v0[n].convert_to<double>()));

    const auto c = lax_field_consistency(sys, s0, make_rational(1, 3));
    CHECK(c.exact_match);
    CHECK(c.off_chart == 0.0);
    CHECK(c.float_error < 1e-10);
    CHECK(c.velocity == c.from_fields);

    CHECK_THROWS_AS(lax_integrate(sys, s0, 1, 1.0, 0), InputError);
    CHECK_THROWS_AS(lax_integrate(sys, s0, 1, -1.0, 10), InputError);
  }
  // a zero pivot breaks the chart
  auto v = random_chart(ChartSystem::s_infty, 2, rs);
  auto s = chart_point(ChartSystem::s_infty, 2, v);
  s.at(0, 1, 1) = 0;
  CHECK_THROWS_AS(lax_integrate(ChartSystem::s_infty, s, 1, 0.1, 10), DomainError);
  CHECK_THROWS_AS(chart_point(ChartSystem::s_infty, 2, std::vector<Rational>{1}), InputError);
}
