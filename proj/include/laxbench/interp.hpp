#pragma once

#include <string>
#include <vector>

#include "laxbench/poisson.hpp"
#include "laxbench/polymat.hpp"

namespace laxbench {

/// Distinct interpolation nodes with weights c_a = prod_{b != a} (a_a - a_b)^{-1}.
struct Nodes {
  std::vector<Rational> a;
  std::vector<Rational> c;

  explicit Nodes(std::vector<Rational> points);
  std::size_t size() const { return a.size(); }
  /// prod (x - a_a)
  Poly<Rational> phi() const;
  /// L_a(x) = prod_{b != a} (x - a_b)
  Poly<Rational> partial_product(std::size_t alpha) const;
};

Nodes parse_nodes(const std::string& text);

/// (c_1 A(a_1), ..., c_n A(a_n)) for A of degree <= n-1.
std::vector<Mat<Rational>> lagrange_split(const PolyMat<Rational>& a, const Nodes& nodes);

/// Inverse of lagrange_split: A(x) = sum_a A^a L_a(x).
PolyMat<Rational> lagrange_join(const std::vector<Mat<Rational>>& blocks, const Nodes& nodes,
                                const DegreeProfile& profile);

struct PullbackReport {
  int entries = 0;
  int mismatches = 0;
  std::optional<std::pair<int, int>> first_mismatch;
  bool passed() const { return mismatches == 0; }
};

/// The canonical Lie-Poisson bracket on the node blocks, pulled back to the
/// enlarged-space coordinates, against beauville_tensor with phi = prod (x - a).
PullbackReport canonical_pullback_check(int r, int d, const Nodes& nodes);

/// The pulled-back table itself.
BracketTable canonical_pullback(int r, int d, const Nodes& nodes);

/// g = [[1, b1^T x + b0^T], [0, B]].
struct GrElement {
  Mat<Rational> block;          // B, (r-1) x (r-1)
  std::vector<Rational> b1, b0; // length r-1

  int r() const { return static_cast<int>(block.rows()) + 1; }
  PolyMat<Rational> matrix() const;
  PolyMat<Rational> inverse_matrix() const;
  Mat<Rational> at(const Rational& x) const;
  friend GrElement operator*(const GrElement& g, const GrElement& h);
};

GrElement random_gr_element(int r, RationalSampler& rs);

struct GrAction {
  PolyMat<Rational> remainder;  // degree <= d+1, the acted point
  PolyMat<Rational> quotient;   // degree <= 1
};

/// g^{-1} A g = remainder + phi * quotient.
GrAction gr_action_bullet(const GrElement& g, const PolyMat<Rational>& a, const Phi& phi);

/// The action map is Poisson for beauville_tensor(phi): J Pi(A) J^T = Pi(g.A).
bool gr_action_is_poisson(const GrElement& g, const PolyMat<Rational>& a, const Phi& phi);

}  // namespace laxbench
