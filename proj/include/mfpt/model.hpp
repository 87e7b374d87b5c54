#pragma once

// Oscillator definitions and the leading-order mean-field solution.
//
//   QAHO  H = p^2/2 + x^2/2 + g x^4
//   SAHO  H = p^2/2 + x^2/2 + g x^6
//   QDWO  H = p^2/2 - x^2/2 + g x^4
//
// The mean-field Hamiltonian is H0 = p^2/2 + w^2 x^2/2 + h0. The frequency w
// solves a kind-specific gap equation and h0 makes <H> = <H0> in the n-th
// harmonic state (so E0 = w xi + h0 with xi = n + 1/2).

#include <optional>
#include <string>
#include <string_view>

#include "mfpt/errors.hpp"
#include "mfpt/scalar.hpp"

namespace mfpt {

enum class oscillator_kind { qaho, saho, qdwo };

enum class mean_field_phase { aho, qdwo_sr, qdwo_ssb };

/// Energy zero used when reporting. `well_bottom` shifts the double well to
/// g (x^2 - 1/(4g))^2, i.e. adds 1/(16g); it leaves the AHO kinds unchanged.
enum class energy_origin { hamiltonian, well_bottom };

inline const char* to_string(oscillator_kind kind) {
  switch (kind) {
    case oscillator_kind::qaho: return "qaho";
    case oscillator_kind::saho: return "saho";
    case oscillator_kind::qdwo: return "qdwo";
  }
  return "?";
}

inline const char* to_string(mean_field_phase phase) {
  switch (phase) {
    case mean_field_phase::aho: return "aho";
    case mean_field_phase::qdwo_sr: return "qdwo_sr";
    case mean_field_phase::qdwo_ssb: return "qdwo_ssb";
  }
  return "?";
}

inline oscillator_kind parse_kind(std::string_view text) {
  if (text == "qaho") return oscillator_kind::qaho;
  if (text == "saho") return oscillator_kind::saho;
  if (text == "qdwo") return oscillator_kind::qdwo;
  throw parse_error("unknown oscillator kind '" + std::string(text) + "'");
}

template <class T>
struct oscillator_spec {
  oscillator_kind kind = oscillator_kind::qaho;
  T g = T(1);
  unsigned level = 0;  ///< n; the spectral parameter is xi = n + 1/2

  T xi() const { return from_rational<T>(rational(2 * level + 1, 2)); }

  /// K in g x^(2K).
  int anharmonic_power() const { return kind == oscillator_kind::saho ? 3 : 2; }
};

template <class T>
struct mean_field {
  T omega;
  T h0;
  T sigma;
  T E0;
  mean_field_phase phase = mean_field_phase::aho;
};

template <class T>
struct harmonic_moments {
  T x2, x4, x6, p2;
};

/// H' = g x^(2K) - (x2_coupling/2) x^2 - shift, taken about the harmonic
/// H0 = p^2/2 + omega^2 x^2/2 + shift. Both the recursion and the
/// sum-over-states oracle consume this description.
template <class T>
struct perturbation {
  T omega;
  T g;
  int power = 2;
  T x2_coupling;
  T shift;
};

template <class To, class From>
oscillator_spec<To> convert_spec(const oscillator_spec<From>& spec) {
  oscillator_spec<To> out;
  out.kind = spec.kind;
  out.level = spec.level;
  if constexpr (std::is_same_v<To, From>) {
    out.g = spec.g;
  } else if constexpr (is_exact_v<From>) {
    out.g = from_rational<To>(spec.g);
  } else {
    static_assert(!is_exact_v<To>, "cannot convert a float spec to exact mode");
    out.g = To(spec.g);
  }
  return out;
}

template <class T>
void validate(const oscillator_spec<T>& spec) {
  if (!(spec.g > 0)) throw domain_error("coupling g must be positive");
}

/// f(xi) = xi + 1/(4 xi).
template <class T>
T spectral_factor(const T& xi) {
  return xi + 1 / (4 * xi);
}

/// Residual of the kind-specific gap polynomial at omega.
template <class T>
T gap_residual(const oscillator_spec<T>& spec, const T& w) {
  const T xi = spec.xi();
  switch (spec.kind) {
    case oscillator_kind::qaho:
      return w * w * w - w - 6 * spec.g * spectral_factor(xi);
    case oscillator_kind::saho:
      return w * w * w * w - w * w - T(15) * spec.g / 4 * (5 + 4 * xi * xi);
    case oscillator_kind::qdwo:
      return w * w * w + w - 6 * spec.g * spectral_factor(xi);
  }
  return T(0);
}

template <class T>
T gap_derivative(const oscillator_spec<T>& spec, const T& w) {
  switch (spec.kind) {
    case oscillator_kind::qaho: return 3 * w * w - 1;
    case oscillator_kind::saho: return 4 * w * w * w - 2 * w;
    case oscillator_kind::qdwo: return 3 * w * w + 1;
  }
  return T(1);
}

/// g_c(xi) = (2/3)^(3/2) / (3 (5 xi - 1/(4 xi))). About 0.0907 for the
/// ground state; the quoted literature value 0.09718 does not follow from
/// this expression and is not used.
inline real critical_coupling(const real& xi) {
  real twice = 2 * xi;
  if (xi <= 0 || twice != boost::multiprecision::floor(twice) ||
      boost::multiprecision::fmod(twice, real(2)) != 1)
    throw domain_error("spectral parameter must be n + 1/2 with n >= 0");
  real denom = 3 * (5 * xi - 1 / (4 * xi));
  if (denom <= 0) throw domain_error("critical coupling undefined for this level");
  return boost::multiprecision::pow(real(2) / 3, real(3) / 2) / denom;
}

inline real critical_coupling(unsigned level) {
  return critical_coupling(real(2 * level + 1) / 2);
}

/// True when g > g_c(xi). Compared through squares so the test is exact in
/// rational mode: g * 3 (5 xi - 1/(4 xi)) > (2/3)^(3/2).
template <class T>
bool above_critical_coupling(const oscillator_spec<T>& spec) {
  const T xi = spec.xi();
  T lhs = spec.g * 3 * (5 * xi - 1 / (4 * xi));
  return lhs > 0 && lhs * lhs > T(8) / 27;
}

template <class T>
T leading_energy(const oscillator_spec<T>& spec, const T& w) {
  const T xi = spec.xi();
  switch (spec.kind) {
    case oscillator_kind::qaho: return xi / 4 * (3 * w + 1 / w);
    case oscillator_kind::saho: return xi / 3 * (2 * w + 1 / w);
    case oscillator_kind::qdwo: return xi / 4 * (3 * w - 1 / w);
  }
  return T(0);
}

template <class T>
T energy_shift(const oscillator_spec<T>& spec, const T& w) {
  const T xi = spec.xi();
  switch (spec.kind) {
    case oscillator_kind::qaho: return xi / 4 * (1 / w - w);
    case oscillator_kind::saho: return xi / 3 * (1 / w - w);
    case oscillator_kind::qdwo: return leading_energy(spec, w) - w * xi;
  }
  return T(0);
}

namespace detail {

inline real solve_gap_real(const oscillator_spec<real>& spec) {
  using boost::multiprecision::abs;
  using boost::multiprecision::cbrt;
  const real f = spectral_factor(spec.xi());
  real lo = real(1) / 1000000;
  real hi = 1 + cbrt(6 * spec.g * f) + 10;
  while (gap_residual(spec, hi) < 0) hi *= 2;
  if (gap_residual(spec, lo) > 0) throw domain_error("gap polynomial has no root in bracket");

  // Bisection to roughly double accuracy, then Newton to full precision.
  for (int i = 0; i < 64; ++i) {
    real mid = (lo + hi) / 2;
    (gap_residual(spec, mid) < 0 ? lo : hi) = mid;
  }
  real w = (lo + hi) / 2;
  const real tiny = decimal_tolerance(static_cast<int>(working_digits()));
  for (int i = 0; i < 60; ++i) {
    real step = gap_residual(spec, w) / gap_derivative(spec, w);
    w -= step;
    if (abs(step) <= tiny * abs(w)) break;
  }
  const real tolerance = decimal_tolerance(static_cast<int>(working_digits()) - 10);
  if (!(abs(gap_residual(spec, w)) < tolerance))
    throw convergence_error("gap equation root did not polish to working precision");
  return w;
}

/// Exact positive root when it is rational, found by continued fractions
/// from a 60-digit float root and confirmed by exact substitution.
inline std::optional<rational> rational_gap_root(const oscillator_spec<rational>& spec) {
  precision_guard guard(std::max(60u, working_digits()));
  real approx = solve_gap_real(convert_spec<real>(spec));
  rational candidate = best_rational(approx, integer("1000000000000000"));
  if (candidate > 0 && gap_residual(spec, candidate) == 0) return candidate;
  return std::nullopt;
}

}  // namespace detail

/// Leading-order mean-field solution. In rational mode the gap root must be
/// rational, otherwise a domain_error asks for extended precision.
template <class T>
mean_field<T> solve_gap(const oscillator_spec<T>& spec) {
  validate(spec);
  mean_field_phase phase = mean_field_phase::aho;
  if (spec.kind == oscillator_kind::qdwo) {
    if (!above_critical_coupling(spec)) {
      throw phase_error("double-well coupling g=" + std::to_string(to_double(spec.g)) +
                        " is at or below g_c=" +
                        to_string(critical_coupling(spec.level), 6) +
                        "; only the symmetry-restored phase is supported");
    }
    phase = mean_field_phase::qdwo_sr;
  }

  T w;
  if constexpr (is_exact_v<T>) {
    auto root = detail::rational_gap_root(spec);
    if (!root) throw domain_error("gap root is irrational; exact-rational mode needs rational g, xi and omega");
    w = *root;
  } else {
    w = detail::solve_gap_real(spec);
  }
  return mean_field<T>{w, energy_shift(spec, w), T(0), leading_energy(spec, w), phase};
}

/// True when the gap root is rational, i.e. exact-rational mode is allowed.
inline bool admits_exact_mode(const oscillator_spec<rational>& spec) {
  validate(spec);
  return detail::rational_gap_root(spec).has_value();
}

/// Cardano form of the QAHO root,
///   w = (3 g f)^(1/3) [(1 + sqrt(1-rho))^(1/3) + (1 - sqrt(1-rho))^(1/3)],
/// with 1/rho = 243 g^2 f^2. Only real-valued when 1 - rho >= 0.
inline real qaho_closed_form_omega(const oscillator_spec<real>& spec) {
  using boost::multiprecision::cbrt;
  using boost::multiprecision::sqrt;
  if (spec.kind != oscillator_kind::qaho) throw domain_error("closed form applies to the QAHO only");
  validate(spec);
  const real f = spectral_factor(spec.xi());
  const real rho = 1 / (243 * spec.g * spec.g * f * f);
  if (rho > 1) throw domain_error("closed form needs 243 g^2 f^2 >= 1");
  const real root = sqrt(1 - rho);
  return cbrt(3 * spec.g * f) * (cbrt(1 + root) + cbrt(1 - root));
}

/// Averages in the n-th eigenstate of H0 (sigma = 0 phases).
template <class T>
harmonic_moments<T> moments(const mean_field<T>& mf, const oscillator_spec<T>& spec) {
  if (mf.phase == mean_field_phase::qdwo_ssb) throw domain_error("SSB-phase moments are not implemented");
  if (!(mf.omega > 0)) throw domain_error("mean-field frequency must be positive");
  const T xi = spec.xi();
  const T& w = mf.omega;
  harmonic_moments<T> m;
  m.x2 = xi / w;
  m.p2 = w * xi;
  m.x4 = 3 * (1 + 4 * xi * xi) / (8 * w * w);
  m.x6 = T(5) / 8 * (xi / (w * w * w)) * (5 + 4 * xi * xi);
  return m;
}

/// Coefficient of x^2/2 in H: +1 for the AHO kinds, -1 for the double well.
template <class T>
T bare_x2_coefficient(const oscillator_spec<T>& spec) {
  return spec.kind == oscillator_kind::qdwo ? T(-1) : T(1);
}

/// <H> in the n-th harmonic state of frequency mf.omega.
template <class T>
T mean_field_expectation(const mean_field<T>& mf, const oscillator_spec<T>& spec) {
  auto m = moments(mf, spec);
  T anharmonic = spec.anharmonic_power() == 3 ? m.x6 : m.x4;
  return m.p2 / 2 + bare_x2_coefficient(spec) * m.x2 / 2 + spec.g * anharmonic;
}

template <class T>
perturbation<T> perturbation_of(const oscillator_spec<T>& spec, const mean_field<T>& mf) {
  perturbation<T> h;
  h.omega = mf.omega;
  h.g = spec.g;
  h.power = spec.anharmonic_power();
  h.x2_coupling = mf.omega * mf.omega - bare_x2_coefficient(spec);
  h.shift = mf.h0;
  return h;
}

/// <H'> in the n-th state of H0; zero by construction of h0.
template <class T>
T perturbation_average(const mean_field<T>& mf, const oscillator_spec<T>& spec) {
  auto m = moments(mf, spec);
  auto h = perturbation_of(spec, mf);
  T anharmonic = h.power == 3 ? m.x6 : m.x4;
  return h.g * anharmonic - h.x2_coupling / 2 * m.x2 - h.shift;
}

template <class T>
T energy_offset(const oscillator_spec<T>& spec, energy_origin origin) {
  if (origin == energy_origin::well_bottom && spec.kind == oscillator_kind::qdwo)
    return 1 / (16 * spec.g);
  return T(0);
}

}  // namespace mfpt
