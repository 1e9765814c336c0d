#pragma once

#include <string>
#include <vector>

#include "laxbench/polymat.hpp"

namespace laxbench {

enum class GaugeGroup { pgl, gr };

/// Infinitesimal gauge motions at a point. pgl: [A(x), N] over a traceless
/// basis N. gr (the upper-triangular group with a linear corner):
/// [A, E_ij] for i,j >= 2, [A, E_1j] and [x A, E_1j] for j >= 2.
struct OrbitModel {
  GaugeGroup group = GaugeGroup::pgl;
  int r = 2;

  static OrbitModel pgl(int r) { return {GaugeGroup::pgl, r}; }
  static OrbitModel gr(int r) { return {GaugeGroup::gr, r}; }

  int generator_count() const {
    return group == GaugeGroup::pgl ? r * r - 1 : (r - 1) * (r - 1) + 2 * (r - 1);
  }

  std::string name() const { return group == GaugeGroup::pgl ? "pgl" : "gr"; }

  /// Generator fields at A, each expressed in A's profile.
  template <class T>
  std::vector<PolyMat<T>> generators(const PolyMat<T>& a) const {
    std::vector<PolyMat<T>> out;
    const DegreeProfile& p = a.profile();
    auto push = [&](const PolyMat<T>& v) { out.push_back(v.with_profile(p)); };
    if (group == GaugeGroup::pgl) {
      for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j)
          if (i != j) push(commutator_constant(a, unit_matrix<T>(r, i, j)));
      for (int i = 0; i + 1 < r; ++i) {
        Mat<T> n = unit_matrix<T>(r, i, i) - unit_matrix<T>(r, i + 1, i + 1);
        push(commutator_constant(a, n));
      }
      return out;
    }
    for (int i = 1; i < r; ++i)
      for (int j = 1; j < r; ++j) push(commutator_constant(a, unit_matrix<T>(r, i, j)));
    PolyMat<T> xa(DegreeProfile::uniform(r, p.max_bound() + 1));
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j)
        for (int k = 0; k <= p.bound(i, j); ++k) xa.at(i, j, k + 1) = a.at(i, j, k);
    for (int j = 1; j < r; ++j) {
      push(commutator_constant(a, unit_matrix<T>(r, 0, j)));
      push(commutator_constant(xa, unit_matrix<T>(r, 0, j)));
    }
    return out;
  }
};

template <class T>
struct OrbitDecomposition {
  std::vector<T> coefficients;
  std::vector<T> residual;  // coordinates in the point's CoordSet order
  bool orbit_tangent = false;
  double residual_norm = 0.0;
};

namespace detail {

template <class T>
Mat<T> generator_matrix(const std::vector<PolyMat<T>>& gens, const CoordSet& cs) {
  Mat<T> m = zero_matrix<T>(cs.size(), static_cast<Eigen::Index>(gens.size()));
  for (std::size_t g = 0; g < gens.size(); ++g) {
    const auto v = gens[g].flatten(cs);
    for (int n = 0; n < cs.size(); ++n) m(n, static_cast<Eigen::Index>(g)) = v[static_cast<std::size_t>(n)];
  }
  return m;
}

}  // namespace detail

/// Writes v = sum c_m X_m(A) + R. Exact scalars: rational elimination, R is
/// the orthogonal residual and orbit_tangent means R == 0 exactly. Floats:
/// SVD least squares with a relative threshold.
template <class T>
OrbitDecomposition<T> orbit_decompose(const std::vector<T>& v, const PolyMat<T>& a, const OrbitModel& model) {
  const CoordSet cs(a.profile());
  if (static_cast<int>(v.size()) != cs.size()) throw InputError("tangent vector does not match the point's profile");
  const auto gens = model.generators(a);
  const Mat<T> m = detail::generator_matrix(gens, cs);
  Vec<T> rhs(cs.size());
  for (int n = 0; n < cs.size(); ++n) rhs(n) = v[static_cast<std::size_t>(n)];

  OrbitDecomposition<T> out;
  Vec<T> c = zero_vector<T>(m.cols());
  if constexpr (is_exact_v<T>) {
    // Least squares on the independent generator columns.
    const auto piv = rref(m).pivot_columns;
    if (!piv.empty()) {
      Mat<T> mp(m.rows(), static_cast<Eigen::Index>(piv.size()));
      for (std::size_t q = 0; q < piv.size(); ++q) mp.col(static_cast<Eigen::Index>(q)) = m.col(piv[q]);
      const Mat<T> mt = mp.transpose();
      const Mat<T> gram = mt * mp;
      const Vec<T> cp = solve(gram, Vec<T>(mt * rhs));
      for (std::size_t q = 0; q < piv.size(); ++q) c(piv[q]) = cp(static_cast<Eigen::Index>(q));
    }
  } else {
    const Mat<Complex> mc = convert_matrix<Complex>(m);
    Vec<Complex> rc(rhs.size());
    for (Eigen::Index n = 0; n < rhs.size(); ++n) rc(n) = Complex(base_value(rhs(n)));
    Eigen::JacobiSVD<Mat<Complex>> svd(mc, Eigen::ComputeThinU | Eigen::ComputeThinV);
    svd.setThreshold(1e-8);
    const Vec<Complex> cc = svd.solve(rc);
    for (Eigen::Index q = 0; q < cc.size(); ++q) c(q) = T(cc(q));
  }
  const Vec<T> res = rhs - m * c;
  double norm = 0.0, scale = 1.0;
  for (Eigen::Index n = 0; n < res.size(); ++n) {
    norm = std::max(norm, magnitude(res(n)));
    scale = std::max(scale, magnitude(rhs(n)));
  }
  out.coefficients.assign(c.data(), c.data() + c.size());
  out.residual.assign(res.data(), res.data() + res.size());
  out.residual_norm = norm;
  if constexpr (is_exact_v<T>) {
    out.orbit_tangent = is_zero_matrix<T>(res);
  } else {
    out.orbit_tangent = norm <= 1e-8 * scale;
  }
  return out;
}

template <class T>
OrbitDecomposition<T> orbit_decompose(const PolyMat<T>& v, const PolyMat<T>& a, const OrbitModel& model) {
  return orbit_decompose(v.with_profile(a.profile()).flatten(CoordSet(a.profile())), a, model);
}

}  // namespace laxbench
