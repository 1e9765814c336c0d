#include "laxbench/lax.hpp"

#include <cmath>
#include <limits>

#include "laxbench/flows.hpp"

namespace laxbench {

ChartSystem parse_chart_system(const std::string& s) {
  if (s == "s_infty") return ChartSystem::s_infty;
  if (s == "s_prime_infty") return ChartSystem::s_prime_infty;
  throw InputError("unknown chart system '" + s + "' (expected s_infty or s_prime_infty)");
}

std::string chart_system_name(ChartSystem s) { return s == ChartSystem::s_infty ? "s_infty" : "s_prime_infty"; }

namespace {

using CVec = std::vector<Complex>;

CVec velocity(ChartSystem sys, int d, const CVec& state, const Complex& y0, double& off_chart) {
  const PolyMat<Complex> v = lax_rhs(sys, chart_point(sys, d, state), y0);
  off_chart = std::max(off_chart, off_chart_norm(sys, d, v));
  return chart_values(sys, d, v);
}

CVec axpy(const CVec& x, double a, const CVec& y) {
  CVec out(x.size());
  for (std::size_t n = 0; n < x.size(); ++n) out[n] = x[n] + a * y[n];
  return out;
}

void check_shape(ChartSystem sys, const PolyMat<Rational>& s0) {
  const int d = s0.profile().d;
  if (!(s0.profile() == chart_profile(sys, d))) throw InputError("initial point has the wrong profile for this chart");
  if (!(chart_point(sys, d, chart_values(sys, d, s0)) == s0)) throw InputError("initial point is not in normal-form shape");
}

}  // namespace

Trajectory lax_integrate(ChartSystem sys, const PolyMat<Rational>& s0, const Rational& y0, double t_end, int steps) {
  check_shape(sys, s0);
  if (steps < 0 || (steps == 0 && t_end != 0.0)) throw InputError("step count must be positive");
  if (!std::isfinite(t_end) || t_end < 0.0) throw InputError("t_end must be finite and non-negative");
  const int d = s0.profile().d;
  Trajectory tr;
  tr.system = sys;
  tr.d = d;
  CVec state;
  for (const auto& q : chart_values(sys, d, s0)) state.push_back(Complex(q.convert_to<double>()));
  const Complex c0(y0.convert_to<double>());
  auto record = [&](double t) {
    tr.times.push_back(t);
    tr.states.push_back(state);
    tr.hamiltonians.push_back(h2_table(chart_point(sys, d, state)));
  };
  record(0.0);
  if (t_end == 0.0) return tr;
  tr.dt = t_end / steps;
  const double h = tr.dt;
  for (int n = 0; n < steps; ++n) {
    const CVec k1 = velocity(sys, d, state, c0, tr.max_off_chart);
    const CVec k2 = velocity(sys, d, axpy(state, h / 2, k1), c0, tr.max_off_chart);
    const CVec k3 = velocity(sys, d, axpy(state, h / 2, k2), c0, tr.max_off_chart);
    const CVec k4 = velocity(sys, d, axpy(state, h, k3), c0, tr.max_off_chart);
    for (std::size_t m = 0; m < state.size(); ++m) state[m] += h / 6 * (k1[m] + 2.0 * k2[m] + 2.0 * k3[m] + k4[m]);
    record((n + 1) * h);
  }
  const auto& h0 = tr.hamiltonians.front();
  for (const auto& row : tr.hamiltonians)
    for (std::size_t j = 0; j < row.size(); ++j) tr.max_drift = std::max(tr.max_drift, std::abs(row[j] - h0[j]));
  auto sup = [](const CVec& v) {
    double m = 0.0;
    for (const auto& z : v) m = std::max(m, std::abs(z));
    return m;
  };
  const double base = std::max(sup(tr.states.front()), 1e-300);
  for (const auto& st : tr.states) tr.growth = std::max(tr.growth, sup(st) / base);
  if (!std::isfinite(tr.growth)) tr.growth = std::numeric_limits<double>::infinity();
  return tr;
}

LaxConsistency lax_field_consistency(ChartSystem sys, const PolyMat<Rational>& s0, const Rational& y0) {
  check_shape(sys, s0);
  const int d = s0.profile().d;
  LaxConsistency out;
  const PolyMat<Rational> rhs = lax_rhs(sys, s0, y0);
  out.off_chart = off_chart_norm(sys, d, rhs);
  out.velocity = chart_values(sys, d, rhs);

  // ambient coordinates: the enlarged space for the first chart, the mixed profile for the second
  const DegreeProfile amb = sys == ChartSystem::s_infty ? DegreeProfile::bullet(2, d) : DegreeProfile::bv(2, d);
  const CoordSet cs(amb);
  const auto x = s0.with_profile(amb).flatten(cs);
  const Mat<Rational> jac =
      sys == ChartSystem::s_infty
          ? chart_jacobian([d](const auto& v) { return s_infty_chart_map(d, v); }, x)
          : chart_jacobian([d](const auto& v) { return s_prime_infty_chart_map(d, v); }, x);
  const auto ys = y_fields(s0, 1);
  out.from_fields.assign(static_cast<std::size_t>(jac.rows()), Rational(0));
  Rational pw = 1;
  for (const auto& y : ys) {
    const auto yv = y.with_profile(amb).flatten(cs);
    for (Eigen::Index a = 0; a < jac.rows(); ++a) {
      Rational acc = 0;
      for (Eigen::Index b = 0; b < jac.cols(); ++b) acc += jac(a, b) * yv[static_cast<std::size_t>(b)];
      out.from_fields[static_cast<std::size_t>(a)] += pw * acc;
    }
    pw *= y0;
  }
  out.exact_match = out.velocity == out.from_fields && out.off_chart == 0.0;

  std::vector<Complex> sc;
  for (const auto& q : chart_values(sys, d, s0)) sc.push_back(Complex(q.convert_to<double>()));
  const auto vc = chart_values(sys, d, lax_rhs(sys, chart_point(sys, d, sc), Complex(y0.convert_to<double>())));
  for (std::size_t n = 0; n < vc.size(); ++n) {
    const double ref = out.from_fields[n].convert_to<double>();
    out.float_error = std::max(out.float_error, std::abs(vc[n] - ref) / std::max(1.0, std::abs(ref)));
  }
  return out;
}

}  // namespace laxbench
