#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "laxbench/report.hpp"

namespace laxbench {

Backend parse_backend(const std::string& s);
std::string backend_name(Backend b);
System parse_system(const std::string& s);
std::string system_name(System s);

const std::vector<std::string>& suite_names();

struct SuiteConfig {
  std::string suite = "tensor-axioms";
  System system = System::beauville;
  int r = 2;
  int d = 1;
  std::optional<std::string> phi_text;  // unset: each suite picks (seeded) phis itself
  std::uint64_t seed = 1;
  Backend backend = Backend::exact;
  int points = 5;
  std::optional<std::string> nodes_text;
  std::optional<Rational> c;  // empty = infinity
  Rational y0 = make_rational(1, 2);
  double t_end = 1.0;
  int steps = 1000;

  /// Throws InputError for anything outside the supported grid.
  void validate() const;
  Phi phi() const;  // requires phi_text
  Json to_json() const;
};

/// Deterministic given the config; the runtime and timestamp are filled in too.
Report run_suite(const SuiteConfig& cfg);

// Point generators shared with the tests.

/// Beauville-profile point whose top coefficient is singular and regular and
/// which lies in the domain of the normal form at infinity.
PolyMat<Rational> random_m_infty_point(int r, int d, RationalSampler& rs);

/// Same for the expansion point c: A(c) singular regular, A'(c) v0 cyclic.
PolyMat<Rational> random_m_c_point(int r, int d, const Rational& c, RationalSampler& rs);

/// Singular regular constant matrix (companion of y * q(y), randomly conjugated).
Mat<Rational> random_singular_regular(int r, RationalSampler& rs);

/// Chart coordinates drawn from the sampler, scaled by `scale`.
std::vector<Rational> random_chart(ChartSystem sys, int d, RationalSampler& rs, const Rational& scale = 1);

/// Random phi of degree exactly `deg` (nonzero coefficients up to deg).
Phi random_phi(int d, int deg, RationalSampler& rs);

}  // namespace laxbench
