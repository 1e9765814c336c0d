#include <doctest.h>

#include "laxbench/gauge.hpp"
#include "laxbench/lax.hpp"
#include "laxbench/spaces.hpp"
#include "laxbench/suites.hpp"

using namespace laxbench;

namespace {

Rational q(long n, long d = 1) { return make_rational(n, d); }

Mat<Rational> mat2(long a, long b, long c, long d) {
  Mat<Rational> m(2, 2);
  m << q(a), q(b), q(c), q(d);
  return m;
}

Vec<Rational> vec2(long a, long b) {
  Vec<Rational> v(2);
  v << q(a), q(b);
  return v;
}

// A(x) = [[x, x+1], [x, x]]
PolyMat<Rational> worked_example() {
  PolyMat<Rational> a(DegreeProfile::beauville(2, 1));
  a.at(0, 0, 1) = 1;
  a.at(0, 1, 0) = 1;
  a.at(0, 1, 1) = 1;
  a.at(1, 0, 1) = 1;
  a.at(1, 1, 1) = 1;
  return a;
}

int chart_slot(const std::vector<CoordIndex>& chart, int i, int j, int k) {
  for (std::size_t n = 0; n < chart.size(); ++n)
    if (chart[n].i == i && chart[n].j == j && chart[n].k == k) return static_cast<int>(n);
  return -1;
}

bool row_vanishes(const Mat<Rational>& m, int row) {
  for (Eigen::Index c = 0; c < m.cols(); ++c)
    if (m(row, c) != 0) return false;
  return true;
}

}  // namespace

TEST_CASE("regularity") {
  CHECK_FALSE(is_regular(identity_matrix<Rational>(2)).regular);
  CHECK(is_regular(mat2(0, 1, 0, 0)).regular);
  CHECK(is_regular(mat2(1, 0, 0, 2)).regular);
  Mat<Rational> d3 = zero_matrix<Rational>(3, 3);
  d3(0, 0) = 1;
  d3(1, 1) = 1;
  d3(2, 2) = 2;
  CHECK_FALSE(is_regular(d3).regular);
  d3(0, 1) = 1;  // one Jordan block per eigenvalue
  CHECK(is_regular(d3).regular);
}

TEST_CASE("xi matrices") {
  const Mat<Rational> a = mat2(1, 2, 3, 4);
  CHECK(xi(a, 0) == identity_matrix<Rational>(2));
  // A - tr(A) I
  CHECK(xi(a, 1) == mat2(-4, 2, 3, -1));
  CHECK_THROWS_AS(xi(a, 2), InputError);
  // xi_{r-1}(A) A = -det(A) I for r = 2 by Cayley-Hamilton
  CHECK(Mat<Rational>(xi(a, 1) * a) == Mat<Rational>(identity_matrix<Rational>(2) * q(2)));
}

TEST_CASE("cyclic vectors and the gauge matrix") {
  const Mat<Rational> j = mat2(0, 1, 0, 0);
  CHECK_FALSE(in_V(j, vec2(1, 0)));
  CHECK(in_V(j, vec2(0, 1)));
  CHECK_THROWS_AS(in_V(identity_matrix<Rational>(2), vec2(0, 1)), InputError);
  CHECK_THROWS_AS(g_matrix(vec2(1, 0), j), InputError);

  RationalSampler rs(41);
  for (int r = 2; r <= 4; ++r)
    for (int trial = 0; trial < 20; ++trial) {
      const Mat<Rational> a = random_matrix(rs, r, r);
      Vec<Rational> u(r);
      for (int i = 0; i < r; ++i) u(i) = rs();
      if (!is_regular(a).regular || !in_V(a, u)) continue;
      const Mat<Rational> g = g_matrix(u, a);
      const Mat<Rational> m = inverse(g) * a * g;
      REQUIRE(is_companion_shape(m, char_poly_coefficients(a)));
    }
}

TEST_CASE("kernel vector of singular regular matrices") {
  RationalSampler rs(42);
  for (int r = 2; r <= 4; ++r)
    for (int trial = 0; trial < 100; ++trial) {
      const Mat<Rational> a = random_singular_regular(r, rs);
      REQUIRE(determinant(a) == 0);
      const Mat<Rational> adj = adjugate(a);
      REQUIRE(matrix_rank(adj) == 1);
      REQUIRE(Mat<Rational>(a * adj) == zero_matrix<Rational>(r, r));
      const Vec<Rational> v = v0(a);
      const Vec<Rational> av = a * v;
      bool kernel = true, nonzero = false;
      for (int i = 0; i < r; ++i) {
        kernel = kernel && av(i) == 0;
        nonzero = nonzero || v(i) != 0;
      }
      REQUIRE(kernel);
      REQUIRE(nonzero);
    }
  CHECK_THROWS_AS(v0(zero_matrix<Rational>(3, 3)), DomainError);
}

TEST_CASE("membership in the normalization domain") {
  CHECK(m_infty_membership(worked_example()));

  PolyMat<Rational> a(DegreeProfile::beauville(2, 1));
  a.at(0, 0, 1) = 1;
  a.at(1, 1, 1) = 1;  // A_1 = I is not regular
  CHECK_FALSE(m_infty_membership(a));

  PolyMat<Rational> b(DegreeProfile::beauville(2, 1));
  b.at(0, 0, 1) = 1;  // A_1 = E_11, v0 = e_2
  b.at(0, 0, 0) = 1;
  b.at(1, 1, 0) = 1;  // A_0 v0 = e_2 is not cyclic for A_1
  CHECK_FALSE(m_infty_membership(b));
  CHECK_THROWS_AS(normalize_beauville(b), DomainError);

  PolyMat<Rational> c(DegreeProfile::beauville(2, 1));
  c.at(0, 0, 1) = 1;  // A_1 invertible
  c.at(1, 1, 1) = 2;
  c.at(0, 1, 0) = 1;
  CHECK_FALSE(m_infty_membership(c));
}

TEST_CASE("worked normalization at infinity") {
  const auto nf = normalize_beauville(worked_example());
  PolyMat<Rational> s(DegreeProfile::beauville(2, 1));
  s.at(0, 0, 1) = 2;
  s.at(0, 1, 0) = 1;
  s.at(1, 0, 1) = 1;
  CHECK(nf.s == s);
  CHECK(nf.gauge == mat2(-1, 1, 0, -1));
  CHECK(nf.target == NormalTarget::s_infty);
}

TEST_CASE("normal forms are fixed points and equal the conjugate") {
  RationalSampler rs(43);
  for (int r = 2; r <= 3; ++r)
    for (int d = 1; d <= 3; ++d)
      for (int trial = 0; trial < 10; ++trial) {
        const auto a = random_m_infty_point(r, d, rs);
        REQUIRE(m_infty_membership(a));
        const auto nf = normalize_beauville(a);
        REQUIRE(conjugate_constant(nf.gauge, nf.s, inverse(nf.gauge)).with_profile(a.profile()) == a);
        const auto again = normalize_beauville(nf.s);
        REQUIRE(again.s == nf.s);
        // the gauge is only defined up to scale
        REQUIRE(again.gauge == Mat<Rational>(identity_matrix<Rational>(r) * again.gauge(0, 0)));
        // invariant under constant conjugation
        Mat<Rational> h = random_matrix(rs, r, r);
        while (determinant(h) == 0) h = random_matrix(rs, r, r);
        REQUIRE(normalize_beauville(conjugate_constant(h, a, inverse(h)).with_profile(a.profile())).s == nf.s);
      }
  for (int d = 1; d <= 3; ++d) {
    const auto s = s_infty_point(d, random_chart(ChartSystem::s_infty, d, rs));
    const auto nf = normalize_beauville(s);
    CHECK(nf.s == s);
    CHECK(nf.gauge == Mat<Rational>(identity_matrix<Rational>(2) * nf.gauge(0, 0)));
  }
}

TEST_CASE("normalization at a finite point") {
  RationalSampler rs(44);
  for (int r = 2; r <= 3; ++r) {
    const Rational c = q(3, 2);
    const auto a = random_m_c_point(r, 2, c, rs);
    const ExpansionPoint at{c};
    REQUIRE(m_membership(a, at));
    const auto nf = normalize_beauville(a, at);
    CHECK(nf.target == NormalTarget::s_c);
    const auto [val, der] = leading_pair(nf.s, at);
    CHECK(in_omega(val));
    CHECK(in_T(der));
    CHECK(normalize_beauville(nf.s, at).s == nf.s);
  }
}

TEST_CASE("mixed-profile normal form of size two") {
  RationalSampler rs(45);
  for (int d = 2; d <= 4; ++d)
    for (int trial = 0; trial < 10; ++trial) {
      const auto s = s_prime_infty_point(d, random_chart(ChartSystem::s_prime_infty, d, rs));
      const auto fixed = normalize_bv_r2(s);
      REQUIRE(fixed.s == s);
      REQUIRE(fixed.c == 1);
      REQUIRE(fixed.b1 == 0);
      REQUIRE(fixed.b0 == 0);

      Poly<Rational> b(1);
      b[0] = rs();
      b[1] = rs();
      const Rational c = rs.nonzero();
      const auto a = gr_conjugate_r2(s, b, c).with_profile(s.profile());
      REQUIRE(membership(a, DegreeProfile::bv(2, d)));
      const auto nf = normalize_bv_r2(a);
      REQUIRE(nf.s == s);
      // g S = A g for g = [[1, b], [0, c]] means nf recovers g^{-1}
      const Rational ic = Rational(1) / c;
      REQUIRE(nf.c == ic);
    }
  PolyMat<Rational> z(DegreeProfile::bv(2, 2));
  CHECK_THROWS_AS(normalize_bv_r2(z), DomainError);
  CHECK_THROWS_AS(normalize_bv_r2(PolyMat<Rational>(DegreeProfile::beauville(2, 2))), InputError);
}

TEST_CASE("chart brackets against the chain rule") {
  RationalSampler rs(46);
  SUBCASE("first chart, phi = x") {
    const auto s = s_infty_point(2, random_chart(ChartSystem::s_infty, 2, rs));
    Mat<Rational> h = random_matrix(rs, 2, 2);
    while (determinant(h) == 0) h = random_matrix(rs, 2, 2);
    const auto amb = conjugate_constant(h, s, inverse(h)).with_profile(s.profile());
    const auto cr = induced_bracket_crosscheck(System::beauville, amb, Phi::monomial(2, 1));
    CHECK(cr.passed());
    CHECK(cr.pairs > 0);
    const Mat<Rational> pb = first_chart_bracket(s, Phi::monomial(2, 1));
    CHECK(Mat<Rational>(pb + pb.transpose()) == zero_matrix<Rational>(pb.rows(), pb.cols()));
  }
  SUBCASE("second chart") {
    const int d = 3;
    const auto s = s_prime_infty_point(d, random_chart(ChartSystem::s_prime_infty, d, rs));
    Poly<Rational> b(1);
    b[0] = rs();
    b[1] = rs();
    const auto amb = gr_conjugate_r2(s, b, rs.nonzero()).with_profile(s.profile());
    CHECK(induced_bracket_crosscheck(System::bv, amb, random_phi(d, d + 2, rs)).passed());
    CHECK_THROWS_AS(second_chart_bracket(s_prime_infty_point(2, random_chart(ChartSystem::s_prime_infty, 2, rs)),
                                  Phi::monomial(2, 1)),
                    InputError);
  }
}

TEST_CASE("reduced slices") {
  RationalSampler rs(47);
  for (int d = 2; d <= 3; ++d) {
    // traceless, u_{d-1} = 1
    auto s = s_infty_point(d, random_chart(ChartSystem::s_infty, d, rs));
    s.at(0, 0, d) = 0;
    s.at(0, 0, d - 1) = 0;
    for (int k = 0; k <= d - 2; ++k) s.at(1, 1, k) = -s.at(0, 0, k);
    s.at(0, 1, d - 1) = 1;
    CHECK(mumford_member(s));
    const int iu = chart_slot(s_infty_chart(d), 0, 1, d - 1);
    REQUIRE(iu >= 0);
    CHECK(row_vanishes(first_chart_bracket(s, random_phi(d, d, rs)), iu));
    CHECK_FALSE(row_vanishes(first_chart_bracket(s, random_phi(d, d, rs) + Phi::monomial(d, d + 1)), iu));
  }
  {
    const int d = 3;
    auto s = s_prime_infty_point(d, random_chart(ChartSystem::s_prime_infty, d, rs));
    s.at(0, 1, d + 1) = 1;
    for (int k = 0; k <= d; ++k) s.at(0, 0, k) = k <= d - 2 ? Rational(-s.at(1, 1, k)) : Rational(0);
    CHECK(even_mumford_member(s));
    const int iw = chart_slot(s_prime_infty_chart(d), 0, 1, d + 1);
    REQUIRE(iw >= 0);
    CHECK(row_vanishes(second_chart_bracket(s, random_phi(d, d + 1, rs)), iw));
  }
  PolyMat<Rational> dm(DegreeProfile::beauville(2, 2));
  dm.at(0, 1, 2) = 1;  // nilpotent top, traceless
  dm.at(0, 0, 1) = 3;
  dm.at(1, 1, 1) = -3;
  CHECK(donagi_markman_member(dm));
  dm.at(0, 0, 0) = 1;
  CHECK_FALSE(donagi_markman_member(dm));
}
