#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "laxbench/dual.hpp"
#include "laxbench/mpoly.hpp"
#include "laxbench/scalar.hpp"

namespace laxbench {

using DualQ = Dual<Rational>;
using Dual2Q = Dual<DualQ>;
using DualC = Dual<Complex>;

/// A differentiable function of the coordinates, stored as one closure per
/// evaluation ring so gradients (and Hessians) come from forward mode.
struct Observable {
  std::string name;
  std::function<DualQ(const std::vector<DualQ>&)> eval_q;
  std::function<Dual2Q(const std::vector<Dual2Q>&)> eval_q2;
  std::function<DualC(const std::vector<DualC>&)> eval_c;
};

/// Wraps a generic callable `f(const std::vector<U>&) -> U`.
template <class F>
Observable make_observable(std::string name, F f) {
  Observable o;
  o.name = std::move(name);
  o.eval_q = [f](const std::vector<DualQ>& x) { return f(x); };
  o.eval_q2 = [f](const std::vector<Dual2Q>& x) { return f(x); };
  o.eval_c = [f](const std::vector<DualC>& x) { return f(x); };
  return o;
}

inline Observable observable_from_mpoly(std::string name, MPoly<Rational> p) {
  return make_observable(std::move(name), [p = std::move(p)](const auto& x) { return p(x); });
}

/// The coordinate function x_n.
inline Observable coordinate_observable(std::string name, int n) {
  return make_observable(std::move(name), [n](const auto& x) { return x[static_cast<std::size_t>(n)]; });
}

template <class T>
struct ValueGradient {
  T value;
  std::vector<T> gradient;
};

template <class T>
ValueGradient<T> value_gradient(const Observable& f, const std::vector<T>& x) {
  const auto vars = make_variables(x);
  Dual<T> out;
  if constexpr (std::is_same_v<T, Rational>) {
    out = f.eval_q(vars);
  } else {
    out = f.eval_c(vars);
  }
  ValueGradient<T> vg{out.value(), {}};
  vg.gradient.reserve(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) vg.gradient.push_back(out.partial(i));
  return vg;
}

struct ValueGradientHessian {
  Rational value;
  std::vector<Rational> gradient;
  std::vector<std::vector<Rational>> hessian;
};

inline ValueGradientHessian value_gradient_hessian(const Observable& f, const std::vector<Rational>& x) {
  const Dual2Q out = f.eval_q2(make_second_order_variables(x));
  const std::size_t n = x.size();
  ValueGradientHessian h{out.value().value(), std::vector<Rational>(n), std::vector<std::vector<Rational>>(n, std::vector<Rational>(n))};
  for (std::size_t a = 0; a < n; ++a) {
    h.gradient[a] = out.value().partial(a);
    const DualQ row = out.partial(a);
    for (std::size_t b = 0; b < n; ++b) h.hessian[a][b] = row.partial(b);
  }
  return h;
}

}  // namespace laxbench
