#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <vector>

#include <Eigen/Dense>
#include <boost/multiprecision/eigen.hpp>

#include "laxbench/dual.hpp"
#include "laxbench/poly.hpp"
#include "laxbench/scalar.hpp"

namespace Eigen {
template <class T>
struct NumTraits<laxbench::Dual<T>> : GenericNumTraits<laxbench::Dual<T>> {
  using Real = laxbench::Dual<T>;
  using NonInteger = laxbench::Dual<T>;
  using Literal = laxbench::Dual<T>;
  using Nested = laxbench::Dual<T>;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 8,
    MulCost = 16,
  };
  static Real epsilon() { return Real(0); }
  static Real dummy_precision() { return Real(0); }
  static int digits10() { return 0; }
};
}  // namespace Eigen

namespace laxbench {

template <class T>
using Mat = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>;
template <class T>
using Vec = Eigen::Matrix<T, Eigen::Dynamic, 1>;

template <class T>
Mat<T> zero_matrix(Eigen::Index rows, Eigen::Index cols) {
  Mat<T> m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = T(0);
  return m;
}

template <class T>
Mat<T> identity_matrix(Eigen::Index n) {
  Mat<T> m = zero_matrix<T>(n, n);
  for (Eigen::Index i = 0; i < n; ++i) m(i, i) = T(1);
  return m;
}

template <class T>
Vec<T> zero_vector(Eigen::Index n) {
  Vec<T> v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = T(0);
  return v;
}

/// Unit matrix E_ij (0-based indices).
template <class T>
Mat<T> unit_matrix(Eigen::Index n, Eigen::Index i, Eigen::Index j) {
  Mat<T> m = zero_matrix<T>(n, n);
  m(i, j) = T(1);
  return m;
}

template <class To, class From>
Mat<To> convert_matrix(const Mat<From>& m) {
  Mat<To> out(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if constexpr (std::is_same_v<From, Rational>) {
        out(i, j) = from_rational<To>(m(i, j));
      } else {
        out(i, j) = To(m(i, j));
      }
    }
  return out;
}

template <class T>
T trace(const Mat<T>& m) {
  T acc = T(0);
  for (Eigen::Index i = 0; i < m.rows(); ++i) acc += m(i, i);
  return acc;
}

template <class T>
bool is_zero_matrix(const Mat<T>& m, Tolerance tol = {}) {
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      if (!value_is_zero(m(i, j), tol)) return false;
  return true;
}

template <class T>
Mat<T> commutator(const Mat<T>& a, const Mat<T>& b) {
  return a * b - b * a;
}

// ---------------------------------------------------------------------------
// Elimination. Exact scalars pivot on the first nonzero entry; float scalars
// use partial pivoting and treat entries below the tolerance as zero.

template <class T>
struct RowEchelon {
  Mat<T> reduced;
  std::vector<Eigen::Index> pivot_columns;
};

namespace detail {

template <class T>
std::optional<Eigen::Index> choose_pivot(const Mat<T>& m, Eigen::Index col, Eigen::Index from,
                                         double threshold) {
  std::optional<Eigen::Index> best;
  double best_mag = threshold;
  for (Eigen::Index i = from; i < m.rows(); ++i) {
    if constexpr (is_exact_v<T>) {
      if (!value_is_zero(m(i, col))) return i;
    } else {
      const double mag = magnitude(m(i, col));
      if (mag > best_mag) {
        best_mag = mag;
        best = i;
      }
    }
  }
  return best;
}

template <class T>
double elimination_threshold(const Mat<T>& m, double rel) {
  if constexpr (is_exact_v<T>) {
    return 0.0;
  } else {
    double mx = 0.0;
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      for (Eigen::Index j = 0; j < m.cols(); ++j) mx = std::max(mx, magnitude(m(i, j)));
    return rel * std::max(mx, 1e-300);
  }
}

}  // namespace detail

/// Reduced row echelon form.
template <class T>
RowEchelon<T> rref(Mat<T> m, double rel_threshold = 1e-10) {
  const double thr = detail::elimination_threshold(m, rel_threshold);
  std::vector<Eigen::Index> pivots;
  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < m.cols() && row < m.rows(); ++col) {
    auto p = detail::choose_pivot(m, col, row, thr);
    if (!p) continue;
    if (*p != row) m.row(*p).swap(m.row(row));
    const T inv = T(1) / m(row, col);
    for (Eigen::Index j = 0; j < m.cols(); ++j) m(row, j) = m(row, j) * inv;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      // structural test: a dual entry with zero value may still carry a gradient
      if (i == row || coeff_is_zero(m(i, col))) continue;
      const T f = m(i, col);
      for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) -= f * m(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return {std::move(m), std::move(pivots)};
}

/// Exact rank by elimination.
template <class T>
Eigen::Index rank_exact(const Mat<T>& m) {
  static_assert(is_exact_v<T>);
  return static_cast<Eigen::Index>(rref(m).pivot_columns.size());
}

/// Numerical rank: singular values above rel * sigma_max.
inline Eigen::Index rank_numeric(const Mat<Complex>& m, double rel = 1e-8) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<Mat<Complex>> svd(m);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0.0) return 0;
  Eigen::Index r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > rel * s(0)) ++r;
  return r;
}

template <class T>
Eigen::Index matrix_rank(const Mat<T>& m) {
  if constexpr (is_exact_v<T>) {
    return rank_exact(m);
  } else {
    return rank_numeric(convert_matrix<Complex>(m));
  }
}

namespace detail {

template <class T>
T laplace_determinant(const Mat<T>& m) {
  const Eigen::Index n = m.rows();
  if (n == 1) return m(0, 0);
  if (n == 2) return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  T acc = T(0);
  for (Eigen::Index j = 0; j < n; ++j) {
    if (coeff_is_zero(m(0, j))) continue;
    Mat<T> sub(n - 1, n - 1);
    for (Eigen::Index i = 1; i < n; ++i)
      for (Eigen::Index k = 0, c = 0; k < n; ++k)
        if (k != j) sub(i - 1, c++) = m(i, k);
    const T term = m(0, j) * laplace_determinant(sub);
    acc = (j % 2 == 0) ? T(acc + term) : T(acc - term);
  }
  return acc;
}

}  // namespace detail

/// Determinant. Small matrices use cofactor expansion (division-free, so
/// derivatives survive at singular points); larger ones use elimination.
template <class T>
T determinant(Mat<T> m) {
  const Eigen::Index n = m.rows();
  if (n == 0) return T(1);
  if (n <= 4) return detail::laplace_determinant(m);
  T det = T(1);
  for (Eigen::Index col = 0; col < n; ++col) {
    auto p = detail::choose_pivot(m, col, col, 0.0);
    if (!p) return T(0);
    if (*p != col) {
      m.row(*p).swap(m.row(col));
      det = -det;
    }
    det *= m(col, col);
    for (Eigen::Index i = col + 1; i < n; ++i) {
      if (coeff_is_zero(m(i, col))) continue;
      const T f = m(i, col) / m(col, col);
      for (Eigen::Index j = col; j < n; ++j) m(i, j) -= f * m(col, j);
    }
  }
  return det;
}

/// Gauss-Jordan inverse; DomainError when singular.
template <class T>
Mat<T> inverse(const Mat<T>& m) {
  const Eigen::Index n = m.rows();
  Mat<T> aug(n, 2 * n);
  aug.leftCols(n) = m;
  aug.rightCols(n) = identity_matrix<T>(n);
  auto e = rref(std::move(aug), 1e-14);
  if (static_cast<Eigen::Index>(e.pivot_columns.size()) < n || e.pivot_columns[n - 1] != n - 1) {
    throw DomainError("matrix is singular");
  }
  return e.reduced.rightCols(n);
}

template <class T>
Mat<T> matrix_power(const Mat<T>& m, int k) {
  Mat<T> out = identity_matrix<T>(m.rows());
  for (int i = 0; i < k; ++i) out = out * m;
  return out;
}

/// Minor with row i and column j removed.
template <class T>
Mat<T> minor_matrix(const Mat<T>& m, Eigen::Index i, Eigen::Index j) {
  const Eigen::Index n = m.rows();
  Mat<T> out(n - 1, n - 1);
  for (Eigen::Index a = 0, oa = 0; a < n; ++a) {
    if (a == i) continue;
    for (Eigen::Index b = 0, ob = 0; b < n; ++b) {
      if (b == j) continue;
      out(oa, ob++) = m(a, b);
    }
    ++oa;
  }
  return out;
}

/// adj(m), so that m * adj(m) = det(m) I.
template <class T>
Mat<T> adjugate(const Mat<T>& m) {
  const Eigen::Index n = m.rows();
  if (n == 1) return identity_matrix<T>(1);
  Mat<T> out(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      T c = determinant(minor_matrix(m, j, i));
      out(i, j) = ((i + j) % 2 == 0) ? c : T(-c);
    }
  return out;
}

/// Coefficients beta_1..beta_r of det(yI - m) = y^r + beta_1 y^{r-1} + ... + beta_r
/// (Faddeev-LeVerrier).
template <class T>
std::vector<T> char_poly_coefficients(const Mat<T>& m) {
  const Eigen::Index n = m.rows();
  std::vector<T> beta(static_cast<std::size_t>(n), T(0));
  Mat<T> mk = zero_matrix<T>(n, n);
  T c_prev = T(1);
  for (Eigen::Index k = 1; k <= n; ++k) {
    mk = m * mk;
    for (Eigen::Index i = 0; i < n; ++i) mk(i, i) += c_prev;
    const Mat<T> amk = m * mk;
    const T c = -trace(amk) / T(static_cast<int>(k));
    beta[static_cast<std::size_t>(k - 1)] = c;
    c_prev = c;
  }
  return beta;
}

/// Solves m x = b for square nonsingular m.
template <class T>
Vec<T> solve(const Mat<T>& m, const Vec<T>& b) {
  const Eigen::Index n = m.rows();
  Mat<T> aug(n, n + 1);
  aug.leftCols(n) = m;
  aug.col(n) = b;
  auto e = rref(std::move(aug), 1e-14);
  if (static_cast<Eigen::Index>(e.pivot_columns.size()) < n || e.pivot_columns[n - 1] != n - 1) {
    throw DomainError("linear system is singular");
  }
  return e.reduced.col(n);
}

}  // namespace laxbench
