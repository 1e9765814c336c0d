#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "laxbench/observable.hpp"
#include "laxbench/orbit.hpp"
#include "laxbench/spaces.hpp"

namespace laxbench {

enum class System { beauville, bv };

/// Pencil parameter: sigma_0..sigma_{d+2}, always stored at full length.
struct Phi {
  int d = 1;
  std::vector<Rational> sigma;

  Phi() = default;
  Phi(int d_, std::vector<Rational> s) : d(d_), sigma(std::move(s)) {
    if (static_cast<int>(sigma.size()) > d + 3) {
      for (std::size_t i = static_cast<std::size_t>(d + 3); i < sigma.size(); ++i)
        if (!sigma[i].is_zero()) throw InputError("phi has more than d+3 coefficients");
    }
    sigma.resize(static_cast<std::size_t>(d + 3), Rational(0));
  }

  /// The basis element x^i.
  static Phi monomial(int d, int i) {
    if (i < 0 || i > d + 2) throw InputError("phi basis index outside 0..d+2");
    std::vector<Rational> s(static_cast<std::size_t>(d + 3), Rational(0));
    s[static_cast<std::size_t>(i)] = 1;
    return Phi(d, s);
  }

  const Rational& operator[](int i) const { return sigma[static_cast<std::size_t>(i)]; }

  /// Largest index with a nonzero coefficient, -1 for phi = 0.
  int degree() const {
    for (int i = d + 2; i >= 0; --i)
      if (!sigma[static_cast<std::size_t>(i)].is_zero()) return i;
    return -1;
  }

  Poly<Rational> poly() const { return Poly<Rational>(sigma); }

  friend Phi operator+(const Phi& a, const Phi& b) {
    std::vector<Rational> s(a.sigma.size());
    for (std::size_t i = 0; i < s.size(); ++i) s[i] = a.sigma[i] + b.sigma[i];
    return Phi(a.d, s);
  }
  friend Phi operator*(const Rational& c, const Phi& a) {
    std::vector<Rational> s(a.sigma);
    for (auto& v : s) v *= c;
    return Phi(a.d, s);
  }
};

/// Parses "x^i" or a comma-separated coefficient list (ascending degree).
Phi parse_phi(const std::string& text, int d);

/// Sparse linear form in the coordinates plus a constant term.
struct LinearForm {
  std::map<int, Rational> terms;
  Rational constant;

  void add(int n, const Rational& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms.emplace(n, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms.erase(it);
    }
  }
  bool is_zero() const { return terms.empty() && constant.is_zero(); }

  template <class T>
  T evaluate(const std::vector<T>& x) const {
    T acc = lift<T>(constant);
    for (const auto& [n, c] : terms) acc += lift<T>(c) * x[static_cast<std::size_t>(n)];
    return acc;
  }

  friend LinearForm operator-(LinearForm a) {
    for (auto& [n, c] : a.terms) c = -c;
    a.constant = -a.constant;
    return a;
  }
  friend bool operator==(const LinearForm& a, const LinearForm& b) {
    return a.terms == b.terms && a.constant == b.constant;
  }
};

/// Structure constants {x_a, x_b} as linear forms, stored densely.
class BracketTable {
 public:
  BracketTable(const DegreeProfile& p, Phi phi)
      : coords_(p), phi_(std::move(phi)), n_(coords_.size()),
        e_(static_cast<std::size_t>(n_ * n_)) {}

  const CoordSet& coords() const { return coords_; }
  const DegreeProfile& profile() const { return coords_.profile(); }
  const Phi& phi() const { return phi_; }
  int size() const { return n_; }

  const LinearForm& operator()(int a, int b) const { return e_[static_cast<std::size_t>(a * n_ + b)]; }
  LinearForm& operator()(int a, int b) { return e_[static_cast<std::size_t>(a * n_ + b)]; }

  /// Pi(A) as a dense matrix.
  template <class T>
  Mat<T> evaluate(const std::vector<T>& x) const {
    Mat<T> m = zero_matrix<T>(n_, n_);
    for (int a = 0; a < n_; ++a)
      for (int b = 0; b < n_; ++b) {
        const auto& lf = (*this)(a, b);
        if (!lf.is_zero()) m(a, b) = lf.evaluate(x);
      }
    return m;
  }

  bool antisymmetric() const {
    for (int a = 0; a < n_; ++a)
      for (int b = a; b < n_; ++b)
        if (!((*this)(a, b) == -(*this)(b, a))) return false;
    return true;
  }
  bool linear() const {
    for (const auto& lf : e_)
      if (!lf.constant.is_zero()) return false;
    return true;
  }

  friend bool operator==(const BracketTable& a, const BracketTable& b) {
    return a.profile() == b.profile() && a.e_ == b.e_;
  }
  /// c1 A + c2 B entrywise (phi of the result is combined the same way).
  friend BracketTable combine(const Rational& c1, const BracketTable& a, const Rational& c2,
                              const BracketTable& b) {
    if (!(a.profile() == b.profile())) throw InputError("tables live on different profiles");
    BracketTable out(a.profile(), c1 * a.phi_ + c2 * b.phi_);
    for (std::size_t n = 0; n < a.e_.size(); ++n) {
      for (const auto& [k, c] : a.e_[n].terms) out.e_[n].add(k, c1 * c);
      for (const auto& [k, c] : b.e_[n].terms) out.e_[n].add(k, c2 * c);
      out.e_[n].constant = c1 * a.e_[n].constant + c2 * b.e_[n].constant;
    }
    return out;
  }

 private:
  CoordSet coords_;
  Phi phi_;
  int n_;
  std::vector<LinearForm> e_;
};

/// Expands {A_ij(x), A_kl(y)} = delta_il T_kj(x,y) - delta_kj T_il(x,y) with
/// T_ab = sum_p A_{ab;p} K_p and K_p = (x^p phi(y) - phi(x) y^p)/(x-y), keeping
/// the x^m y^n coefficients allowed by the profile.
BracketTable expand_tensor(const DegreeProfile& p, const Phi& phi);

/// The enlarged-space tensor (every entry of degree <= d+1).
BracketTable beauville_tensor(int r, int d, const Phi& phi);

/// The truncated tensor on the mixed-degree profile.
BracketTable bv_tensor(int r, int d, const Phi& phi);

inline BracketTable build_tensor(System s, int r, int d, const Phi& phi) {
  return s == System::beauville ? beauville_tensor(r, d, phi) : bv_tensor(r, d, phi);
}

/// Jacobiator of three coordinate functions; linear for a linear tensor.
LinearForm jacobiator_generators(const BracketTable& t, int a, int b, int c);

struct JacobiScan {
  long triples = 0;
  long violations = 0;
  std::optional<std::array<int, 3>> witness;
  LinearForm witness_value;
};

/// Scans all a < b < c (the jacobiator is totally antisymmetric).
JacobiScan jacobi_scan(const BracketTable& t, bool stop_at_first = false);

/// Tables (as polynomials) for symbolic brackets.
MPoly<Rational> bracket(const MPoly<Rational>& f, const MPoly<Rational>& g, const BracketTable& t);
MPoly<Rational> jacobiator(const MPoly<Rational>& f, const MPoly<Rational>& g, const MPoly<Rational>& h,
                           const BracketTable& t);

/// Pointwise bracket of differentiable observables.
template <class T>
T bracket_at_point(const Observable& f, const Observable& g, const BracketTable& t, const std::vector<T>& x) {
  const auto vf = value_gradient(f, x);
  const auto vg = value_gradient(g, x);
  const Mat<T> pi = t.evaluate(x);
  T acc = T(0);
  for (int a = 0; a < t.size(); ++a) {
    if (value_is_zero(vf.gradient[a])) continue;
    for (int b = 0; b < t.size(); ++b) acc += vf.gradient[a] * pi(a, b) * vg.gradient[b];
  }
  return acc;
}

/// Hamiltonian vector field {H, *}: component a is sum_b dH/dx_b Pi(b, a).
template <class T>
std::vector<T> hamiltonian_vf_from_gradient(const BracketTable& t, const std::vector<T>& grad,
                                            const std::vector<T>& x) {
  const Mat<T> pi = t.evaluate(x);
  std::vector<T> out(static_cast<std::size_t>(t.size()), T(0));
  for (int b = 0; b < t.size(); ++b) {
    if (value_is_zero(grad[b])) continue;
    for (int a = 0; a < t.size(); ++a) out[a] += grad[b] * pi(b, a);
  }
  return out;
}

template <class T>
std::vector<T> hamiltonian_vf(const BracketTable& t, const Observable& h, const std::vector<T>& x) {
  return hamiltonian_vf_from_gradient(t, value_gradient(h, x).gradient, x);
}

/// {F,{G,H}} + cyclic at a point, from gradients only: for any bivector the
/// second-derivative terms cancel in the cyclic sum. `pi` is t evaluated at x.
template <class T>
T jacobiator_from_gradients(const BracketTable& t, const Mat<T>& pi, const std::vector<T>& u,
                            const std::vector<T>& v, const std::vector<T>& w) {
  const int n = t.size();
  auto field = [&](const std::vector<T>& g) {
    std::vector<T> out(static_cast<std::size_t>(n), T(0));
    for (int b = 0; b < n; ++b) {
      if (value_is_zero(g[b])) continue;
      for (int a = 0; a < n; ++a) out[a] += g[b] * pi(b, a);
    }
    return out;
  };
  // C_e(p, q) = sum_{b,c} p_b q_c d(Pi_bc)/dx_e
  auto contract = [&](const std::vector<T>& p, const std::vector<T>& q) {
    std::vector<T> ce(static_cast<std::size_t>(n), T(0));
    for (int b = 0; b < n; ++b) {
      if (value_is_zero(p[b])) continue;
      for (int c = 0; c < n; ++c) {
        if (value_is_zero(q[c])) continue;
        const T pq = p[b] * q[c];
        for (const auto& [e, coef] : t(b, c).terms) ce[e] += pq * lift<T>(coef);
      }
    }
    return ce;
  };
  const auto xf = field(u), xg = field(v), xh = field(w);
  const auto cvw = contract(v, w), cwu = contract(w, u), cuv = contract(u, v);
  T acc = T(0);
  for (int e = 0; e < n; ++e) acc += xf[e] * cvw[e] + xg[e] * cwu[e] + xh[e] * cuv[e];
  return acc;
}

template <class T>
T jacobiator_at_point(const BracketTable& t, const Observable& f, const Observable& g, const Observable& h,
                      const std::vector<T>& x) {
  return jacobiator_from_gradients(t, t.evaluate(x), value_gradient(f, x).gradient, value_gradient(g, x).gradient,
                                   value_gradient(h, x).gradient);
}

/// table(c1 phi1 + c2 phi2) == c1 table(phi1) + c2 table(phi2).
bool compatibility_check(System s, int r, int d, const Phi& phi1, const Phi& phi2, const Rational& c1,
                         const Rational& c2);

struct CasimirResult {
  bool identically_zero = false;
  bool orbit_tangent = false;
  double residual_norm = 0.0;
  bool passed() const { return identically_zero || orbit_tangent; }
};

/// Is the Hamiltonian vector field of F zero or orbit-tangent at each point?
template <class T>
std::vector<CasimirResult> casimir_check(const BracketTable& t, const Observable& f,
                                         const std::vector<PolyMat<T>>& points, const OrbitModel& orbit) {
  std::vector<CasimirResult> out;
  for (const auto& a : points) {
    const auto x = a.with_profile(t.profile()).flatten(t.coords());
    const auto vf = hamiltonian_vf(t, f, x);
    CasimirResult cr;
    cr.identically_zero = std::all_of(vf.begin(), vf.end(), [](const T& v) { return value_is_zero(v); });
    if (!cr.identically_zero) {
      const auto dec = orbit_decompose(vf, a.with_profile(t.profile()), orbit);
      cr.orbit_tangent = dec.orbit_tangent;
      cr.residual_norm = dec.residual_norm;
    }
    out.push_back(cr);
  }
  return out;
}

/// Trace-power Hamiltonian H^(k)_j as an observable on a profile's coordinates.
Observable spectral_hamiltonian(const DegreeProfile& p, int k, int j);

}  // namespace laxbench
