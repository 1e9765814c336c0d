#include <doctest.h>

#include "laxbench/interp.hpp"
#include "laxbench/spaces.hpp"

using namespace laxbench;

namespace {

Rational q(long n, long d = 1) { return make_rational(n, d); }

Nodes nodes_of(std::initializer_list<long> pts) {
  std::vector<Rational> v;
  for (long p : pts) v.push_back(q(p));
  return Nodes(v);
}

Nodes distinct_nodes(int count, RationalSampler& rs) {
  for (;;) {
    std::vector<Rational> pts;
    for (int i = 0; i < count; ++i) pts.push_back(rs());
    std::vector<Rational> sorted = pts;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end()) return Nodes(pts);
  }
}

}  // namespace

TEST_CASE("node weights and the node polynomial") {
  const Nodes n = nodes_of({0, 1});
  REQUIRE(n.c.size() == 2);
  CHECK(n.c[0] == -1);
  CHECK(n.c[1] == 1);
  CHECK(n.phi() == Poly<Rational>{q(0), q(-1), q(1)});

  const Nodes m = nodes_of({0, 1, -1});
  // c_a = prod_{b != a} 1 / (a_a - a_b)
  CHECK(m.c[0] == -1);
  CHECK(m.c[1] == q(1, 2));
  CHECK(m.c[2] == q(1, 2));
  CHECK(m.partial_product(0) == Poly<Rational>{q(-1), q(0), q(1)});

  CHECK_THROWS_AS(nodes_of({1, 1}), InputError);
  CHECK_THROWS_AS(parse_nodes("0,1/2,1/2"), InputError);
  CHECK_THROWS_AS(parse_nodes("0,x"), InputError);
  CHECK(parse_nodes("0, 1/2, -3").a == std::vector<Rational>{q(0), q(1, 2), q(-3)});
}

TEST_CASE("split of a linear matrix at two nodes") {
  RationalSampler rs(51);
  const auto a = random_polymat(rs, DegreeProfile::bullet(2, 0));
  const auto blocks = lagrange_split(a, nodes_of({0, 1}));
  REQUIRE(blocks.size() == 2);
  const Mat<Rational> a0 = a.coefficient(0), a1 = a.coefficient(1);
  CHECK(blocks[0] == Mat<Rational>(-a0));
  CHECK(blocks[1] == Mat<Rational>(a0 + a1));

  for (const auto& b : lagrange_split(PolyMat<Rational>(DegreeProfile::bullet(2, 0)), nodes_of({0, 1})))
    CHECK(b == zero_matrix<Rational>(2, 2));
}

TEST_CASE("split and join are inverse") {
  RationalSampler rs(52);
  for (int r = 2; r <= 3; ++r)
    for (int d = 0; d <= 2; ++d)
      for (int trial = 0; trial < 100; ++trial) {
        const DegreeProfile p = DegreeProfile::bullet(r, d);
        const auto a = random_polymat(rs, p);
        const Nodes n = distinct_nodes(d + 2, rs);
        const auto blocks = lagrange_split(a, n);
        REQUIRE(lagrange_join(blocks, n, p) == a);
        // block a is c_a A(a_a)
        for (std::size_t al = 0; al < n.size(); ++al)
          REQUIRE(blocks[al] == Mat<Rational>(a.evaluate(n.a[al]) * n.c[al]));
      }
}

TEST_CASE("canonical bracket on the blocks pulls back to the quadratic tensor") {
  CHECK(canonical_pullback_check(2, 1, nodes_of({0, 1, 2})).passed());
  CHECK(canonical_pullback_check(3, 1, nodes_of({0, 1, -1})).passed());
  CHECK(canonical_pullback_check(2, 0, nodes_of({0, 1})).passed());
  const auto rep = canonical_pullback_check(2, 2, parse_nodes("0,1/2,-1,3"));
  CHECK(rep.passed());
  CHECK(rep.entries > 0);
}

TEST_CASE("gauge group elements") {
  RationalSampler rs(53);
  for (int r = 2; r <= 3; ++r) {
    const GrElement g = random_gr_element(r, rs), h = random_gr_element(r, rs);
    CHECK(g.r() == r);
    const Rational x = rs();
    CHECK(Mat<Rational>(g.at(x) * g.inverse_matrix().evaluate(x)) == identity_matrix<Rational>(r));
    CHECK((g * h).at(x) == Mat<Rational>(g.at(x) * h.at(x)));
    CHECK(g.matrix().evaluate(x) == g.at(x));
  }
}

TEST_CASE("gauge action on the enlarged space") {
  RationalSampler rs(54);
  for (int r = 2; r <= 3; ++r)
    for (int d = 0; d <= 2; ++d) {
      const Nodes n = distinct_nodes(d + 2, rs);
      const Phi phi(d, n.phi().coeffs());
      const DegreeProfile p = DegreeProfile::bullet(r, d);
      const auto a = random_polymat(rs, p);
      const GrElement g = random_gr_element(r, rs), h = random_gr_element(r, rs);
      const auto ga = gr_action_bullet(g, a, phi);
      REQUIRE(membership(ga.remainder, p));

      // the remainder agrees with the conjugate at every node
      for (const auto& node : n.a) {
        const Mat<Rational> gv = g.at(node);
        CHECK(ga.remainder.evaluate(node) == Mat<Rational>(inverse(gv) * a.evaluate(node) * gv));
      }
      // g^{-1} A g = remainder + phi * quotient, checked at a random point
      const Rational x = rs();
      const Mat<Rational> gx = g.at(x);
      const Rational px = n.phi()(x);
      CHECK(Mat<Rational>(inverse(gx) * a.evaluate(x) * gx) ==
            Mat<Rational>(ga.remainder.evaluate(x) + ga.quotient.evaluate(x) * px));

      CHECK(gr_action_bullet(h, ga.remainder, phi).remainder == gr_action_bullet(g * h, a, phi).remainder);

      GrElement k = g;
      std::fill(k.b1.begin(), k.b1.end(), Rational(0));
      std::fill(k.b0.begin(), k.b0.end(), Rational(0));
      const auto kc = gr_action_bullet(k, a, phi);
      CHECK(kc.quotient == PolyMat<Rational>(kc.quotient.profile()));

      CHECK(gr_action_is_poisson(g, a, phi));
    }
}
