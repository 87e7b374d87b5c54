#include <gtest/gtest.h>

#include "mfpt/quadrature.hpp"

using namespace mfpt;
using boost::multiprecision::abs;

TEST(GaussLegendre, WeightsSumToTwoAndNodesAreSymmetric) {
  precision_guard g(80);
  for (int n : {1, 2, 5, 20, 33}) {
    const auto rule = make_gauss_legendre<real>(n);
    real total = 0;
    for (const auto& w : rule.weights) total += w;
    EXPECT_LT(abs(total - 2), decimal_tolerance(75)) << n;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
      EXPECT_LT(abs(rule.nodes[i] + rule.nodes[rule.nodes.size() - 1 - i]), decimal_tolerance(75));
  }
}

TEST(GaussLegendre, ExactForPolynomialsUpToDegree2nMinus1) {
  precision_guard g(80);
  const int n = 10;
  const auto rule = make_gauss_legendre<real>(n);
  for (int degree = 0; degree <= 2 * n - 1; ++degree) {
    real sum = 0;
    for (int k = 0; k < n; ++k) sum += rule.weights[k] * pow(rule.nodes[k], degree);
    const real expected = degree % 2 ? real(0) : real(2) / (degree + 1);
    EXPECT_LT(abs(sum - expected), decimal_tolerance(75)) << degree;
  }
  // degree 2n is not integrated exactly
  real sum = 0;
  for (int k = 0; k < n; ++k) sum += rule.weights[k] * pow(rule.nodes[k], 2 * n);
  EXPECT_GT(abs(sum - real(2) / (2 * n + 1)), decimal_tolerance(20));
}

TEST(Adaptive, SmoothIntegrandToFullPrecision) {
  precision_guard g(100);
  auto r = integrate<real>([](const real& x) { return exp(x); }, real(0), real(1), decimal_tolerance(90));
  ASSERT_TRUE(r.converged);
  EXPECT_LT(abs(r.values[0] - (exp(real(1)) - 1)), decimal_tolerance(88));
}

TEST(Adaptive, EndpointSingularityRefines) {
  precision_guard g(60);
  // int_0^1 sqrt(x) = 2/3, derivative singular at 0
  auto r = integrate<real>([](const real& x) { return sqrt(x); }, real(0), real(1), decimal_tolerance(30));
  ASSERT_TRUE(r.converged);
  EXPECT_GT(r.panels, 10);
  EXPECT_LT(abs(r.values[0] - real(2) / 3), decimal_tolerance(29));
}

TEST(Adaptive, PeakedIntegrandWithBreakpoint) {
  precision_guard g(60);
  // narrow Gaussian centred at 0.3
  const real c = real(3) / 10, s = real(1) / 1000;
  auto f = [&](const real& x) { return exp(-(x - c) * (x - c) / (2 * s * s)); };
  auto r = integrate<real>(f, real(0), real(1), decimal_tolerance(40), {c});
  ASSERT_TRUE(r.converged);
  const real expected = s * sqrt(2 * boost::multiprecision::acos(real(-1)));
  EXPECT_LT(abs(r.values[0] - expected), decimal_tolerance(38) * expected);
}

TEST(Adaptive, VectorMomentsShareEvaluations) {
  precision_guard g(60);
  // int_0^1 x^k e^-x for k = 0..3, closed forms k! (1 - e^-1 sum_{i<=k} 1/i!)
  auto f = [](const real& x) {
    std::vector<real> out(4);
    real w = exp(-x);
    for (auto& v : out) {
      v = w;
      w *= x;
    }
    return out;
  };
  auto err = [](const std::vector<real>& d) {
    real m = 0;
    for (const auto& v : d) m = std::max(m, real(abs(v)));
    return m;
  };
  auto tol = [](const std::vector<real>&) { return decimal_tolerance(50); };
  auto r = integrate_adaptive<real>(f, 4, real(0), real(1), {}, err, tol);
  ASSERT_TRUE(r.converged);
  const real e_inv = exp(real(-1));
  real factorial = 1, partial = 0, inv_fact = 1;
  for (int k = 0; k < 4; ++k) {
    if (k > 0) {
      factorial *= k;
      inv_fact /= k;
    }
    partial += inv_fact;
    EXPECT_LT(abs(r.values[k] - factorial * (1 - e_inv * partial)), decimal_tolerance(48)) << k;
  }
}

TEST(Adaptive, ReportsNonConvergence) {
  precision_guard g(30);
  auto f = [](const real& x) { return std::vector<real>{x == 0 ? real(0) : real(1 / sqrt(x))}; };
  auto err = [](const std::vector<real>& d) { return real(abs(d[0])); };
  auto tol = [](const std::vector<real>&) { return decimal_tolerance(28); };
  auto r = integrate_adaptive<real>(f, 1, real(0), real(1), {}, err, tol, 10, 20);
  EXPECT_FALSE(r.converged);
  EXPECT_EQ(r.panels, 20);
}

TEST(GaussLegendre, RejectsEmptyRule) { EXPECT_THROW(make_gauss_legendre<real>(0), domain_error); }
