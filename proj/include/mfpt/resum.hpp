#pragma once

// Total perturbation correction dE = sum_{k>=1} E_k from a divergent
// correction series, by optimal truncation or by Borel summation.
//
// Borel route: b_j = E_j / Gamma(j/gamma + 1) defines B(u) = sum b_j u^j
// with a finite radius r_c. Its continuation along u > 0 is obtained by
// re-expanding in the conformal variable
//
//   z(u) = (sqrt(1 + u/r_c) - 1) / (sqrt(1 + u/r_c) + 1),  u(z) = rho z/(1-z)^2,
//
// with rho = 4 r_c, and the Laplace integral is taken in z over [0, 1 - eps].

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "mfpt/errors.hpp"
#include "mfpt/model.hpp"
#include "mfpt/quadrature.hpp"
#include "mfpt/scalar.hpp"
#include "mfpt/series.hpp"

namespace mfpt {

enum class summation_method { optimal_truncation, borel };

inline const char* to_string(summation_method m) {
  return m == summation_method::borel ? "borel" : "mot";
}

struct borel_config {
  real gamma = 1;                   ///< Borel exponent, 1/alpha
  std::optional<real> r_c;          ///< radius of convergence of B(u)
  std::optional<real> p_exp;        ///< singularity exponent, diagnostic only
  real epsilon = real(1) / 1000;    ///< upper cutoff 1 - eps of the z integral
  int N_c = 0;                      ///< Borel terms retained
  real quad_tol = real(1) / 100000000;
  bool require_convergence = false; ///< throw when partial sums have not settled
};

struct summation_result {
  summation_method method = summation_method::optimal_truncation;
  real delta_E = 0;
  real E_tot = 0;
  int order = 0;  ///< N0 for truncation, N_c for Borel
  bool converged = false;
  real error_estimate = 0;
  std::optional<real> gamma;
  std::optional<real> r_c;
  std::optional<real> p_exp;
  std::vector<real> partial_sums;  ///< Borel: (dE)_N for N = 1..N_c
  int quadrature_panels = 0;
};

/// Default Borel exponent per kind: 1 for the quartic potentials, 1/2 for the
/// sextic one. Other values (e.g. the double well near g_c) are passed in.
inline real default_gamma(oscillator_kind kind) {
  return kind == oscillator_kind::saho ? real(1) / 2 : real(1);
}

/// Gamma(x) for x > 0; exact factorial at positive integers, MPFR otherwise.
inline real gamma_function(const real& x) {
  if (!(x > 0)) throw domain_error("gamma_function needs x > 0");
  if (x == boost::multiprecision::floor(x) && x < 100000) {
    real product = 1;
    for (long k = 2; k < x.convert_to<long>(); ++k) product *= k;
    return product;
  }
  return boost::multiprecision::tgamma(x);
}

// ---------------------------------------------------------------------------
// Optimal truncation

template <class T>
summation_result optimal_truncation(const correction_series<T>& series) {
  const auto& E = series.corrections;
  using boost::multiprecision::abs;
  for (std::size_t k = 2; k + 1 < E.size(); ++k) {
    if (abs(E[k + 1]) > abs(E[k])) {
      summation_result r;
      r.method = summation_method::optimal_truncation;
      r.order = static_cast<int>(k);
      T sum(0);
      for (std::size_t m = 1; m <= k; ++m) sum += E[m];
      r.delta_E = to_real(sum);
      r.E_tot = to_real(T(E[0] + sum));
      r.converged = true;
      r.error_estimate = to_real(T(abs(E[k + 1])));
      return r;
    }
  }
  throw no_tlm_error("correction magnitudes still decrease at order " +
                     std::to_string(E.size() - 1) + "; compute more orders");
}

// ---------------------------------------------------------------------------
// Borel transform and singularity estimate

/// b_j = E_j / Gamma(j/gamma + 1), j = 1..N. Index 0 is an unused zero so
/// that element j holds b_j.
template <class T>
std::vector<real> borel_coefficients(const correction_series<T>& series, const real& gamma, int N) {
  if (!(gamma > 0)) throw domain_error("Borel exponent gamma must be positive");
  if (N < 1 || series.max_order() < N) throw domain_error("series too short for the requested Borel terms");
  std::vector<real> b(static_cast<std::size_t>(N) + 1, real(0));
  for (int j = 1; j <= N; ++j)
    b[static_cast<std::size_t>(j)] =
        to_real(series.corrections[static_cast<std::size_t>(j)]) / gamma_function(real(j) / gamma + 1);
  return b;
}

struct singularity_estimate {
  real r_c;
  real p_exp;
  bool converged = false;
  int index = 0;  ///< j of the returned estimate
  std::vector<real> radius;    ///< r_j for j = 3, 4, ...
  std::vector<real> exponent;  ///< p_j for j = 3, 4, ...
};

/// Ratio estimators for B(u) ~ (u + r_c)^p:
///
///   r_j = b_j b_{j-1} / D_j,
///   p_j = (j^2 b_j^2 - (j^2 - 1) b_{j-1} b_{j+1}) / D_j,
///   D_j = j b_j^2 - (j + 1) b_{j+1} b_{j-1}.
///
/// Both are exact for every j when B(u) = (1 + u/r)^p. Estimates start at
/// j = 3 because b_1 = 0. Converged when three successive r_j and p_j agree
/// to 1% relative; the last such pair is returned.
inline singularity_estimate estimate_singularity(const std::vector<real>& b) {
  using boost::multiprecision::abs;
  std::size_t last = 1;
  while (last + 1 < b.size() && b[last + 1] != 0) ++last;
  if (last < 7) throw domain_error("need at least 6 consecutive nonzero Borel coefficients from b_2");

  singularity_estimate est;
  std::optional<std::size_t> stable;
  auto settled = [](const std::vector<real>& s, std::size_t at) {
    const real& a = s[at - 2];
    const real& b1 = s[at - 1];
    const real& c = s[at];
    real hi = std::max({a, b1, c});
    real lo = std::min({a, b1, c});
    return hi - lo <= abs(c) / 100;
  };
  for (std::size_t j = 3; j + 1 <= last; ++j) {
    const real jj = static_cast<long>(j);
    const real denom = jj * b[j] * b[j] - (jj + 1) * b[j + 1] * b[j - 1];
    if (denom == 0) break;
    est.radius.push_back(b[j] * b[j - 1] / denom);
    est.exponent.push_back((jj * jj * b[j] * b[j] - (jj * jj - 1) * b[j - 1] * b[j + 1]) / denom);
    const std::size_t at = est.radius.size() - 1;
    if (at >= 2 && est.radius[at] > 0 && settled(est.radius, at) && settled(est.exponent, at)) stable = at;
  }
  if (!stable) {
    std::vector<double> r, p;
    for (const auto& x : est.radius) r.push_back(x.convert_to<double>());
    for (const auto& x : est.exponent) p.push_back(x.convert_to<double>());
    throw non_convergence_error("singularity estimators did not converge; supply r_c explicitly",
                                std::move(r), std::move(p));
  }
  est.r_c = est.radius[*stable];
  est.p_exp = est.exponent[*stable];
  est.index = static_cast<int>(*stable) + 3;
  est.converged = true;
  return est;
}

template <class T>
singularity_estimate estimate_singularity(const correction_series<T>& series, const real& gamma) {
  return estimate_singularity(borel_coefficients(series, gamma, series.max_order()));
}

// ---------------------------------------------------------------------------
// Conformal map

inline real conformal_map(const real& u, const real& r_c) {
  using boost::multiprecision::sqrt;
  real root = sqrt(1 + u / r_c);
  return (root - 1) / (root + 1);
}

inline real conformal_inverse(const real& z, const real& r_c) {
  return 4 * r_c * z / ((1 - z) * (1 - z));
}

/// Exact binomial coefficient C(n, k).
inline integer binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  integer out = 1;
  for (unsigned i = 1; i <= k; ++i) out = out * (n - k + i) / i;
  return out;
}

/// B_k = sum_{n=1}^{k} b_n rho^n (n+k-1)! / ((k-n)! (2n-1)!), k = 1..N,
/// with rho = 4 r_c: the coefficients of sum b_n u(z)^n in powers of z.
/// The factorial ratio is C(n+k-1, 2n-1). Element 0 is unused and missing
/// b_n count as zero.
inline std::vector<real> conformal_reexpand(const std::vector<real>& b, const real& r_c, int N) {
  if (N < 1) throw domain_error("conformal re-expansion needs N >= 1");
  if (!(r_c > 0)) throw domain_error("radius of convergence must be positive");
  const real rho = 4 * r_c;
  const auto size = static_cast<std::size_t>(N) + 1;
  std::vector<real> scaled(size, real(0));
  real power = 1;
  for (std::size_t n = 1; n < size; ++n) {
    power *= rho;
    if (n < b.size()) scaled[n] = b[n] * power;
  }
  std::vector<real> B(size, real(0));
  for (unsigned k = 1; k < size; ++k) {
    real sum = 0;
    for (unsigned n = 1; n <= k; ++n) {
      if (scaled[n] == 0) continue;
      sum += scaled[n] * real(binomial(n + k - 1, 2 * n - 1));
    }
    B[k] = sum;
  }
  return B;
}

inline void validate(const borel_config& cfg) {
  if (!(cfg.gamma > 0)) throw domain_error("gamma must be positive");
  if (!(cfg.epsilon > 0 && cfg.epsilon < 1)) throw domain_error("epsilon must lie in (0, 1)");
  if (cfg.N_c < 2) throw domain_error("N_c must be at least 2");
  if (cfg.r_c && !(*cfg.r_c > 0)) throw domain_error("r_c must be positive");
  if (!(cfg.quad_tol > 0)) throw domain_error("quadrature tolerance must be positive");
}

/// Laplace weight in z: gamma rho (1+z)/(1-z)^3 u^(gamma-1) exp(-u^gamma)
/// with u = rho z / (1-z)^2.
inline real borel_weight(const real& z, const real& rho, const real& gamma) {
  using boost::multiprecision::exp;
  using boost::multiprecision::pow;
  if (z <= 0) return real(0);
  const real one_minus = 1 - z;
  const real u = rho * z / (one_minus * one_minus);
  const real u_gamma = gamma == 1 ? u : real(pow(u, gamma));
  const real jacobian = gamma * rho * (1 + z) / (one_minus * one_minus * one_minus);
  return jacobian * (u_gamma / u) * exp(-u_gamma);
}

/// Conformal-mapped Borel sum. Requires cfg.r_c. The moments
/// M_k = int_0^{1-eps} w(z) z^k dz are integrated together, so every partial
/// sum (dE)_N = sum_{k<=N} B_k M_k comes from one adaptive quadrature whose
/// error is controlled on all partial sums at once.
template <class T>
summation_result borel_sum(const correction_series<T>& series, const borel_config& cfg) {
  using boost::multiprecision::abs;
  using boost::multiprecision::pow;
  validate(cfg);
  if (!cfg.r_c) throw domain_error("borel_sum needs r_c (estimate it or pass it explicitly)");
  if (series.max_order() < cfg.N_c + 1)
    throw domain_error("series must reach order N_c + 1 for Borel summation");

  const int N = cfg.N_c;
  const real r_c = *cfg.r_c;
  const real rho = 4 * r_c;
  const auto b = borel_coefficients(series, cfg.gamma, N);
  const auto B = conformal_reexpand(b, r_c, N);
  const auto dim = static_cast<std::size_t>(N);

  auto moments = [&](const real& z) {
    std::vector<real> out(dim);
    real w = borel_weight(z, rho, cfg.gamma);
    for (std::size_t k = 0; k < dim; ++k) {
      w *= z;
      out[k] = w;
    }
    return out;
  };
  auto partial = [&](const std::vector<real>& m) {
    std::vector<real> sums(dim);
    real acc = 0;
    for (std::size_t k = 0; k < dim; ++k) {
      acc += B[k + 1] * m[k];
      sums[k] = acc;
    }
    return sums;
  };
  auto error_of = [&](const std::vector<real>& diff) {
    real worst = 0;
    for (const auto& s : partial(diff)) worst = std::max(worst, real(abs(s)));
    return worst;
  };
  auto tolerance_of = [&](const std::vector<real>& m) {
    return cfg.quad_tol * abs(partial(m).back());
  };

  // Split where the Laplace weight peaks, u^gamma = gamma.
  const real peak = conformal_map(pow(cfg.gamma, 1 / cfg.gamma), r_c);
  const real upper = 1 - cfg.epsilon;
  auto quad = integrate_adaptive<real>(moments, dim, real(0), upper, {peak}, error_of, tolerance_of);
  if (!quad.converged)
    throw quadrature_error("Borel integral did not reach relative tolerance " +
                           to_string(cfg.quad_tol, 3));

  summation_result r;
  r.method = summation_method::borel;
  r.partial_sums = partial(quad.values);
  r.delta_E = r.partial_sums.back();
  r.E_tot = to_real(series.corrections[0]) + r.delta_E;
  r.order = N;
  r.error_estimate = quad.error_estimate;
  r.quadrature_panels = quad.panels;
  r.gamma = cfg.gamma;
  r.r_c = r_c;
  r.p_exp = cfg.p_exp;
  const real& last = r.partial_sums[dim - 1];
  const real& previous = r.partial_sums[dim - 2];
  r.converged = abs(last - previous) <= abs(last) / 1000000;
  if (cfg.require_convergence && !r.converged)
    throw convergence_error("Borel partial sums have not stabilized at N_c=" + std::to_string(N) +
                            " (last change " + to_string(real(abs(last - previous)), 3) + ")");
  return r;
}

/// dE as a function of r_c, for checking that the result sits on a plateau
/// when r_c had to be supplied by hand.
template <class T>
std::vector<std::pair<real, real>> scan_radius(const correction_series<T>& series, borel_config cfg,
                                               const std::vector<real>& radii) {
  std::vector<std::pair<real, real>> out;
  cfg.require_convergence = false;
  for (const auto& r : radii) {
    cfg.r_c = r;
    out.emplace_back(r, borel_sum(series, cfg).delta_E);
  }
  return out;
}

}  // namespace mfpt
