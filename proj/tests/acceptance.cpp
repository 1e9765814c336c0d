// One line per criterion: "criterion N: PASS|FAIL  summary". With no argument
// every criterion runs; exit status 1 if any of the requested ones fails.

#include <chrono>
#include <cstdlib>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <Eigen/SVD>

#include "laxbench/flows.hpp"
#include "laxbench/gauge.hpp"
#include "laxbench/interp.hpp"
#include "laxbench/lax.hpp"
#include "laxbench/spaces.hpp"
#include "laxbench/suites.hpp"
#include "oracles.hpp"

using namespace laxbench;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void fail(const std::string& why) {
    if (!pass) detail << "; ";
    else detail.str("");
    pass = false;
    detail << why;
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string where(System s, int r, int d) {
  return system_name(s) + " r=" + std::to_string(r) + " d=" + std::to_string(d);
}

SuiteConfig suite(const std::string& name, System s, int r, int d, int points, std::uint64_t seed) {
  SuiteConfig c;
  c.suite = name;
  c.system = s;
  c.r = r;
  c.d = d;
  c.points = points;
  c.seed = seed;
  return c;
}

// Failing records of a suite run whose name starts with one of the prefixes.
int failures(const Report& rep, std::initializer_list<const char*> prefixes, int* seen, std::string* first) {
  int bad = 0;
  for (const auto& c : rep.checks) {
    bool match = false;
    for (const char* p : prefixes) match = match || c.name.rfind(p, 0) == 0;
    if (!match) continue;
    if (seen) ++*seen;
    if (c.status == Status::fail) {
      if (first && first->empty()) *first = c.name + " " + c.detail;
      ++bad;
    }
  }
  return bad;
}

Nodes random_nodes(int count, RationalSampler& rs) {
  for (;;) {
    std::vector<Rational> pts;
    for (int i = 0; i < count; ++i) pts.push_back(rs());
    try {
      return Nodes(pts);
    } catch (const InputError&) {
    }
  }
}

int svd_rank(const Mat<Rational>& m) {
  Eigen::MatrixXd f(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) f(i, j) = m(i, j).convert_to<double>();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(f);
  const auto sv = svd.singularValues();
  const double top = sv.size() ? sv(0) : 0.0;
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > 1e-9 * std::max(top, 1.0)) ++rank;
  return rank;
}

// ---------------------------------------------------------------------------

void criterion_1(Outcome& o) {
  int tables = 0;
  double worst = 0.0;
  for (int r = 2; r <= 3; ++r)
    for (int d = 1; d <= 2; ++d) {
      const auto t0 = std::chrono::steady_clock::now();
      for (int i = 0; i <= d + 2; ++i) {
        const Phi phi = Phi::monomial(d, i);
        const BracketTable t = beauville_tensor(r, d, phi);
        ++tables;
        int mism = 0;
        if (!oracle::table_matches(t, oracle::monomial(i), &mism))
          o.fail(where(System::beauville, r, d) + " x^" + std::to_string(i) + ": " + std::to_string(mism) +
                 " structure constants differ from the direct expansion");
        if (!t.antisymmetric()) o.fail(where(System::beauville, r, d) + " x^" + std::to_string(i) + ": not antisymmetric");
        const JacobiScan scan = jacobi_scan(t);
        if (scan.violations)
          o.fail(where(System::beauville, r, d) + " x^" + std::to_string(i) + ": " + std::to_string(scan.violations) +
                 " jacobi violations");
      }
      const double secs = seconds_since(t0);
      worst = std::max(worst, secs);
      if (secs > 60.0) o.fail(where(System::beauville, r, d) + " took " + std::to_string(secs) + " s");
    }
  if (o.pass) o.detail << tables << " tensors antisymmetric with vanishing jacobiator, slowest (r,d) " << worst << " s";
}

void criterion_2(Outcome& o) {
  RationalSampler rs(202);
  int runs = 0;
  for (auto [r, d] : {std::pair{2, 1}, std::pair{2, 2}, std::pair{3, 1}})
    for (int set = 0; set < 3; ++set) {
      const Nodes n = random_nodes(d + 2, rs);
      const auto rep = canonical_pullback_check(r, d, n);
      ++runs;
      if (!rep.passed())
        o.fail("r=" + std::to_string(r) + " d=" + std::to_string(d) + ": " + std::to_string(rep.mismatches) + " of " +
               std::to_string(rep.entries) + " entries differ");
    }
  if (o.pass) o.detail << runs << " node sets, pulled-back bracket equals the tensor exactly";
}

void criterion_3(Outcome& o) {
  RationalSampler rs(303);
  int scans = 0;
  for (int r = 2; r <= 3; ++r)
    for (int d = 1; d <= 2; ++d) {
      std::vector<Phi> phis;
      for (int i = 0; i <= d; ++i) phis.push_back(Phi::monomial(d, i));
      phis.push_back(random_phi(d, d, rs));
      for (const auto& phi : phis) {
        ++scans;
        const JacobiScan scan = jacobi_scan(bv_tensor(r, d, phi));
        if (scan.violations) o.fail(where(System::bv, r, d) + ": jacobi fails with deg phi <= d");
      }
    }
  std::ostringstream good;
  good << scans << " tensors with deg phi <= d satisfy jacobi";

  // beyond the truncation degree: a witness for the bare monomials and for x^k + 1
  const int d = 2;
  for (int top = d + 1; top <= d + 2; ++top) {
    const std::string k = "x^" + std::to_string(top);
    const JacobiScan mono = jacobi_scan(bv_tensor(2, d, Phi::monomial(d, top)));
    const JacobiScan shifted = jacobi_scan(bv_tensor(2, d, Phi::monomial(d, top) + Phi::monomial(d, 0)));
    good << "; " << k << ": " << mono.violations << " violations, " << k << "+1: " << shifted.violations;
    if (mono.violations == 0) o.fail("no jacobi violation for phi = " + k + " (graded truncation)");
    if (shifted.violations == 0) o.fail("no jacobi violation for phi = " + k + " + 1");

    // invariant functions at 20 points
    for (const Phi& phi : {Phi::monomial(d, top), Phi::monomial(d, top) + Phi::monomial(d, 0)}) {
      auto cfg = suite("casimirs", System::bv, 2, d, 20, 3030 + top);
      std::string sig;
      for (int i = 0; i <= d + 2; ++i) sig += (i ? "," : "") + to_string(phi[i]);
      cfg.phi_text = sig;
      int seen = 0;
      std::string first;
      const int bad = failures(run_suite(cfg), {"invariant jacobiator"}, &seen, &first);
      if (bad || seen != 20) o.fail("invariant jacobiator, phi " + sig + ": " + std::to_string(bad) + " of " +
                                    std::to_string(seen) + " points fail " + first);
    }
  }
  if (o.pass) o.detail << good.str() << "; invariant jacobiator vanishes at 20 points";
  else o.detail << "  [" << good.str() << "]";
}

void criterion_4(Outcome& o) {
  RationalSampler rs(404);
  int checks = 0;
  {
    const int r = 3, d = 2;
    for (int f = 0; f < 5; ++f) {
      const Phi phi = random_phi(d, d + 2, rs);
      for (int n = 0; n < 10; ++n) {
        const auto a = random_point(DegreeProfile::beauville(r, d), rs.engine()()).matrix;
        for (int k = 2; k <= 3; ++k)
          for (int j = 0; j <= d * k; ++j) {
            ++checks;
            const auto c = lemma_ham_y_check(a, k, j, phi, System::beauville);
            if (!c.passed || !c.exact_equality)
              o.fail("beauville k=" + std::to_string(k) + " j=" + std::to_string(j) + " differs");
          }
      }
    }
  }
  int bv = 0;
  for (int d = 2; d <= 3; ++d)
    for (int f = 0; f < 5; ++f) {
      const Phi phi = random_phi(d, d + 2, rs);
      for (int n = 0; n < 10; ++n) {
        const auto a = random_point(DegreeProfile::bv(2, d), rs.engine()()).matrix;
        for (int j = 0; j <= 2 * d; ++j) {
          ++bv;
          const auto c = lemma_ham_y_check(a, 2, j, phi, System::bv);
          if (!c.passed || c.residual_norm != 0.0)
            o.fail("bv d=" + std::to_string(d) + " j=" + std::to_string(j) + ": residual " +
                   std::to_string(c.residual_norm));
        }
      }
    }
  if (o.pass) o.detail << checks << " exact equalities on the (3,2) space, " << bv << " gauge-exact on the mixed profile";
}

void criterion_5(Outcome& o) {
  int ladders = 0, inventories = 0;
  for (System s : {System::beauville, System::bv})
    for (int r = 2; r <= 3; ++r)
      for (int d = 1; d <= 2; ++d) {
        std::string first;
        const int bad_l = failures(run_suite(suite("multi-ham", s, r, d, 10, 505)), {"multi-hamiltonian ladder"}, &ladders, &first);
        if (bad_l) o.fail(where(s, r, d) + " ladder: " + first);
        first.clear();
        const int bad_c = failures(run_suite(suite("casimirs", s, r, d, 10, 506)), {"casimir inventory"}, &inventories, &first);
        if (bad_c) o.fail(where(s, r, d) + " inventory: " + first);
      }
  if (o.pass) o.detail << ladders << " ladder checks and " << inventories << " casimir inventories over 8 spaces, 10 points each";
}

void criterion_6(Outcome& o) {
  for (auto [r, d, g] : {std::tuple{2, 3, 2}, std::tuple{3, 2, 4}})
    for (std::uint64_t n = 0; n < 5; ++n) {
      const int rank = y_span_rank(random_point(DegreeProfile::beauville(r, d), 600 + n).matrix, System::beauville);
      if (rank != g)
        o.fail("r=" + std::to_string(r) + " d=" + std::to_string(d) + ": rank " + std::to_string(rank) + ", expected " +
               std::to_string(g));
    }
  if (o.pass) o.detail << "span rank 2 on (2,3) and 4 on (3,2) at 5 points each";
}

void criterion_7(Outcome& o) {
  int seen = 0;
  for (int r = 2; r <= 3; ++r)
    for (int d = 1; d <= 2; ++d) {
      std::string first;
      const int bad = failures(run_suite(suite("gauge", System::beauville, r, d, 50, 707)),
                               {"normal form", "gauge invariance", "worked 2x2 example", "rank-one annihilator"}, &seen, &first);
      if (bad) o.fail(where(System::beauville, r, d) + ": " + first);
    }
  if (o.pass) o.detail << seen << " checks: 50 points per space, 10 conjugates each, worked example reproduced";
}

void criterion_8(Outcome& o) {
  int seen = 0;
  std::string first;
  const int bad = failures(run_suite(suite("r2-charts", System::beauville, 2, 3, 20, 808)),
                           {"first chart bracket", "second chart bracket", "first reduction", "second reduction"}, &seen,
                           &first);
  if (bad) o.fail(first);
  if (seen < 42) o.fail("only " + std::to_string(seen) + " chart checks ran");
  if (o.pass) o.detail << seen << " checks: both charts at 20 points, both reductions";
}

void criterion_9(Outcome& o) {
  for (System s : {System::beauville, System::bv}) {
    auto cfg = suite("flows", s, 2, 3, 3, 909);
    cfg.steps = 1000;
    cfg.t_end = 1.0;
    const Report rep = run_suite(cfg);
    for (const auto& c : rep.checks) {
      const bool wanted = c.name.rfind("conservation", 0) == 0 || c.name.rfind("lax velocity", 0) == 0;
      if (!wanted) continue;
      if (c.status != Status::pass) o.fail(c.name + ": " + c.detail);
      else if (c.name.rfind("conservation", 0) == 0) o.detail << (o.detail.tellp() ? "; " : "") << c.name << ": " << c.detail;
    }
  }
}

void criterion_10(Outcome& o) {
  RationalSampler rs(1010);
  for (int d = 2; d <= 3; ++d)
    for (int n = 0; n < 5; ++n) {
      const auto s = s_infty_point(d, random_chart(ChartSystem::s_infty, d, rs));
      const Phi phi = random_phi(d, d + 1, rs);
      const int rank = svd_rank(first_chart_bracket(s, phi));
      if (rank != 2 * (d - 1))
        o.fail("d=" + std::to_string(d) + ": rank " + std::to_string(rank) + ", expected " + std::to_string(2 * (d - 1)));
    }
  if (o.pass) o.detail << "rank 2 for d=2 and 4 for d=3 at 5 points each";
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::function<void(Outcome&)>> all = {criterion_1, criterion_2, criterion_3, criterion_4,
                                                          criterion_5, criterion_6, criterion_7, criterion_8,
                                                          criterion_9, criterion_10};
  std::vector<int> which;
  for (int i = 1; i < argc; ++i) {
    const int n = std::atoi(argv[i]);
    if (n < 1 || n > static_cast<int>(all.size())) {
      std::cerr << "usage: acceptance [criterion numbers 1-10]\n";
      return 2;
    }
    which.push_back(n);
  }
  if (which.empty())
    for (int n = 1; n <= static_cast<int>(all.size()); ++n) which.push_back(n);

  bool ok = true;
  for (int n : which) {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      all[static_cast<std::size_t>(n - 1)](o);
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    std::cout << "criterion " << n << ": " << (o.pass ? "PASS" : "FAIL") << "  " << o.detail.str() << "  ("
              << std::fixed << std::setprecision(1) << seconds_since(t0) << " s)" << std::endl;
    ok = ok && o.pass;
  }
  return ok ? 0 : 1;
}
