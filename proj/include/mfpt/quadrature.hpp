#pragma once

// Globally adaptive composite Gauss-Legendre quadrature at working precision.
// Each panel is integrated with one n-point rule and with the same rule on its
// two halves; the difference is the panel's error estimate and the panel with
// the largest estimate is split next. Integrands may be vector-valued so that
// several moments share one set of function evaluations.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <vector>

#include "mfpt/errors.hpp"
#include "mfpt/scalar.hpp"

namespace mfpt {

template <class T>
struct gauss_legendre_rule {
  std::vector<T> nodes;  ///< on [-1, 1], ascending
  std::vector<T> weights;
};

/// Nodes are Newton-polished roots of P_n at working precision.
template <class T>
gauss_legendre_rule<T> make_gauss_legendre(int n) {
  if (n < 1) throw domain_error("Gauss-Legendre order must be positive");
  using std::abs;
  using boost::multiprecision::abs;
  gauss_legendre_rule<T> rule;
  rule.nodes.resize(static_cast<std::size_t>(n));
  rule.weights.resize(static_cast<std::size_t>(n));
  const T tiny = decimal_tolerance(static_cast<int>(working_digits()) - 2);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    T x = T(std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5)));
    T derivative(0);
    for (int iter = 0; iter < 100; ++iter) {
      T p0(1), p1 = x;
      for (int k = 2; k <= n; ++k) {
        T p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = std::move(p1);
        p1 = std::move(p2);
      }
      if (n == 1) p0 = T(1);
      derivative = n * (x * p1 - p0) / (x * x - 1);
      T step = p1 / derivative;
      x -= step;
      if (abs(step) <= tiny) break;
    }
    // Recompute the derivative at the polished node for the weight.
    T p0(1), p1 = x;
    for (int k = 2; k <= n; ++k) {
      T p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
      p0 = std::move(p1);
      p1 = std::move(p2);
    }
    if (n == 1) p0 = T(1);
    derivative = n * (x * p1 - p0) / (x * x - 1);
    T w = 2 / ((1 - x * x) * derivative * derivative);
    const auto lo = static_cast<std::size_t>(i);
    const auto hi = static_cast<std::size_t>(n - 1 - i);
    rule.nodes[lo] = -x;
    rule.nodes[hi] = x;
    rule.weights[lo] = w;
    rule.weights[hi] = w;
  }
  return rule;
}

template <class T>
struct quadrature_result {
  std::vector<T> values;
  T error_estimate = T(0);
  int panels = 0;
  bool converged = false;
};

namespace detail {

template <class T>
struct panel {
  T a, b;
  std::vector<T> value;
  T error;
  std::vector<T> left, right;
};

template <class T, class F>
std::vector<T> apply_rule(const gauss_legendre_rule<T>& rule, const F& f, const T& a, const T& b,
                          std::size_t dim) {
  std::vector<T> sum(dim, T(0));
  const T half = (b - a) / 2;
  const T mid = (a + b) / 2;
  for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
    T x = mid + half * rule.nodes[k];
    std::vector<T> fx = f(x);
    for (std::size_t d = 0; d < dim; ++d) sum[d] += rule.weights[k] * fx[d];
  }
  for (auto& s : sum) s *= half;
  return sum;
}

}  // namespace detail

/// Integrates a vector-valued f over [a, b], pre-split at `breakpoints`.
/// `error_of(diff)` maps a difference vector to a scalar error and
/// `tolerance_of(total)` gives the acceptable total error for the current
/// estimate. Panels are reduced in left-to-right order so the result does not
/// depend on refinement history beyond the final panel set.
template <class T, class F, class ErrorOf, class ToleranceOf>
quadrature_result<T> integrate_adaptive(const F& f, std::size_t dim, const T& a, const T& b,
                                        std::vector<T> breakpoints, const ErrorOf& error_of,
                                        const ToleranceOf& tolerance_of, int order = 20,
                                        int max_panels = 4000) {
  const auto rule = make_gauss_legendre<T>(order);

  // A panel's coarse value is the rule on the whole panel; its fine value is
  // the rule on both halves. After a split, each child inherits its half as
  // the coarse value.
  auto build = [&](const T& lo, const T& hi, const std::vector<T>& coarse) {
    const T mid = (lo + hi) / 2;
    detail::panel<T> p{lo, hi, {}, T(0)};
    p.left = detail::apply_rule(rule, f, lo, mid, dim);
    p.right = detail::apply_rule(rule, f, mid, hi, dim);
    p.value.resize(dim);
    std::vector<T> diff(dim);
    for (std::size_t d = 0; d < dim; ++d) {
      p.value[d] = p.left[d] + p.right[d];
      diff[d] = p.value[d] - coarse[d];
    }
    p.error = error_of(diff);
    return p;
  };

  std::vector<T> cuts{a};
  std::sort(breakpoints.begin(), breakpoints.end());
  for (auto& p : breakpoints)
    if (p > a && p < b) cuts.push_back(p);
  cuts.push_back(b);

  std::vector<detail::panel<T>> panels;
  for (std::size_t c = 0; c + 1 < cuts.size(); ++c)
    panels.push_back(build(cuts[c], cuts[c + 1],
                           detail::apply_rule(rule, f, cuts[c], cuts[c + 1], dim)));

  auto reduce = [&]() {
    std::vector<T> value(dim, T(0));
    T error(0);
    for (const auto& p : panels) {
      for (std::size_t d = 0; d < dim; ++d) value[d] += p.value[d];
      error += p.error;
    }
    return std::pair{std::move(value), std::move(error)};
  };

  quadrature_result<T> result;
  while (true) {
    auto [value, error] = reduce();
    const int count = static_cast<int>(panels.size());
    if (error <= tolerance_of(value) || count >= max_panels) {
      result.converged = error <= tolerance_of(value);
      result.values = std::move(value);
      result.error_estimate = std::move(error);
      result.panels = count;
      return result;
    }
    auto worst = std::max_element(panels.begin(), panels.end(),
                                  [](const auto& x, const auto& y) { return x.error < y.error; });
    detail::panel<T> parent = std::move(*worst);
    const T mid = (parent.a + parent.b) / 2;
    *worst = build(parent.a, mid, parent.left);
    panels.insert(worst + 1, build(mid, parent.b, parent.right));
  }
}

/// Scalar convenience wrapper with a relative tolerance.
template <class T, class F>
quadrature_result<T> integrate(const F& f, const T& a, const T& b, const T& rel_tol,
                               std::vector<T> breakpoints = {}) {
  auto vf = [&](const T& x) { return std::vector<T>{f(x)}; };
  auto err = [](const std::vector<T>& d) { return d[0] < 0 ? T(-d[0]) : d[0]; };
  auto tol = [&](const std::vector<T>& v) {
    T m = v[0] < 0 ? T(-v[0]) : v[0];
    return rel_tol * m;
  };
  return integrate_adaptive<T>(vf, 1, a, b, std::move(breakpoints), err, tol);
}

}  // namespace mfpt
