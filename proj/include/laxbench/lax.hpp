#pragma once

#include <algorithm>
#include <array>
#include <string>
#include <vector>

#include "laxbench/gauge.hpp"

namespace laxbench {

enum class ChartSystem { s_infty, s_prime_infty };

ChartSystem parse_chart_system(const std::string& s);
std::string chart_system_name(ChartSystem s);

inline std::vector<CoordIndex> chart_coords(ChartSystem sys, int d) {
  return sys == ChartSystem::s_infty ? s_infty_chart(d) : s_prime_infty_chart(d);
}

inline DegreeProfile chart_profile(ChartSystem sys, int d) {
  return sys == ChartSystem::s_infty ? DegreeProfile::beauville(2, d) : DegreeProfile::bv(2, d);
}

/// The normal-form matrix with the given free coordinates (the fixed
/// coefficient is 1).
template <class T>
PolyMat<T> chart_point(ChartSystem sys, int d, const std::vector<T>& values) {
  const auto chart = chart_coords(sys, d);
  if (values.size() != chart.size()) throw InputError("chart vector has wrong length");
  PolyMat<T> s(chart_profile(sys, d));
  for (std::size_t n = 0; n < chart.size(); ++n) s.at(chart[n].i, chart[n].j, chart[n].k) = values[n];
  if (sys == ChartSystem::s_infty) s.at(1, 0, d) = T(1);
  else s.at(1, 0, d - 1) = T(1);
  return s;
}

template <class T>
std::vector<T> chart_values(ChartSystem sys, int d, const PolyMat<T>& s) {
  std::vector<T> out;
  for (const auto& c : chart_coords(sys, d)) out.push_back(s.coeff(c.i, c.j, c.k));
  return out;
}

/// Largest coefficient of `v` outside the chart (a flow of the normal form
/// must not move the fixed coefficients or leave the profile).
template <class T>
double off_chart_norm(ChartSystem sys, int d, const PolyMat<T>& v) {
  const auto chart = chart_coords(sys, d);
  const DegreeProfile p = chart_profile(sys, d);
  double worst = 0.0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k <= v.profile().bound(i, j); ++k) {
        const bool free = k <= p.bound(i, j) &&
                          std::find_if(chart.begin(), chart.end(), [&](const CoordIndex& c) {
                            return c.i == i && c.j == j && c.k == k;
                          }) != chart.end();
        if (!free) worst = std::max(worst, magnitude(v.at(i, j, k)));
      }
  return worst;
}

/// [S(x), B(x)] with B the printed second argument; the pole at x = y0 is
/// removed by exact division of [S(x), S(y0)] by (x - y0).
template <class T>
PolyMat<T> lax_rhs(ChartSystem sys, const PolyMat<T>& s, const T& y0) {
  const int d = s.profile().d;
  const Mat<T> m0 = s.evaluate(y0);
  PolyMat<T> out(DegreeProfile::uniform(2, d + 2));
  // divided commutator
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      Poly<T> c(static_cast<std::size_t>(d + 2));
      for (int l = 0; l < 2; ++l) {
        c += s(i, l) * m0(l, j);
        c -= m0(i, l) * s(l, j);
      }
      auto [q, rem] = divide_linear(c, y0);
      if constexpr (is_exact_v<T>) {
        if (!value_is_zero(rem)) throw InternalError("[S(x), S(y0)] does not vanish at x = y0");
      }
      out.set(i, j, q.with_bound(static_cast<std::size_t>(d + 2)));
    }
  // correction term as a polynomial matrix (entries of degree <= 1)
  std::array<Poly<T>, 4> b;
  b.fill(Poly<T>(1));
  const T vd = s.coeff(0, 0, d);
  if (sys == ChartSystem::s_infty) {
    const T u = s.coeff(0, 1, d - 1);
    if (value_is_zero(u)) throw DomainError("chart breakdown: u_{d-1} vanishes");
    const T f = s(0, 1)(y0) / u;
    b[0][0] = f * vd;
    b[2][0] = f;
  } else {
    const T f = s(1, 0)(y0);
    const T wt = s.coeff(0, 1, d + 1), wd = s.coeff(0, 1, d);
    const T u2 = d >= 2 ? s.coeff(1, 0, d - 2) : T(0);
    b[1][1] = f * wt;
    b[1][0] = f * (wt * (y0 - u2) + wd);
    b[3][0] = -f * vd;
  }
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      Poly<T> c = out(i, j);
      for (int l = 0; l < 2; ++l) {
        c += s(i, l) * b[static_cast<std::size_t>(2 * l + j)];
        c -= b[static_cast<std::size_t>(2 * i + l)] * s(l, j);
      }
      out.set(i, j, c.with_bound(static_cast<std::size_t>(d + 2)));
    }
  return out;
}

struct Trajectory {
  ChartSystem system = ChartSystem::s_infty;
  int d = 0;
  double dt = 0.0;
  std::vector<double> times;
  std::vector<std::vector<Complex>> states;        // chart coordinates per step
  std::vector<std::vector<Complex>> hamiltonians;  // H^(2)_j per step
  double max_drift = 0.0;                          // max_j,t |H_j(t) - H_j(0)|
  double max_off_chart = 0.0;                      // largest off-chart velocity seen
  double growth = 1.0;                             // max_t |state(t)| / |state(0)|, sup norms
};

template <class T>
std::vector<T> h2_table(const PolyMat<T>& s) {
  const Poly<T> h = trace_power(s, 2);
  return std::vector<T>(h.coeffs().begin(), h.coeffs().end());
}

/// Classical RK4 on the chart coordinates with a fixed step.
Trajectory lax_integrate(ChartSystem sys, const PolyMat<Rational>& s0, const Rational& y0, double t_end, int steps);

struct LaxConsistency {
  bool exact_match = false;   // over Q: chart velocity == sum_j y0^j F_j
  double float_error = 0.0;   // complex RHS at t = 0 against the exact values
  double off_chart = 0.0;     // exact off-chart velocity (must be 0)
  std::vector<Rational> velocity;
  std::vector<Rational> from_fields;
};

/// Pushes the Y^(1)_j fields to the chart by the Jacobian of the
/// normalization and compares with the printed Lax form at y0.
LaxConsistency lax_field_consistency(ChartSystem sys, const PolyMat<Rational>& s0, const Rational& y0);

}  // namespace laxbench
