#pragma once

// Independent reference values.
//
// diagonalize: the full Hamiltonian in a truncated harmonic-oscillator basis
// of frequency Omega, restricted to one parity sector, solved by a dense
// symmetric eigensolver in double precision.
//
// rspt_sum_over_states: textbook second- and third-order Rayleigh-Schroedinger
// sums about the fixed mean-field H0. Matrix elements are built on the
// unnormalised states |j) = (a^+)^j |0>, for which a^+|j) = |j+1) and
// a|j) = j|j-1), so every quantity stays rational when omega is rational:
// with W_mn = <m|H'|n> / sqrt(m! n!), products such as V_nm V_mk V_kn equal
// W_nm W_mk W_kn n! m! k!.

#include <Eigen/Dense>

#include <cmath>
#include <cstddef>
#include <optional>
#include <vector>

#include "mfpt/errors.hpp"
#include "mfpt/model.hpp"
#include "mfpt/scalar.hpp"

namespace mfpt {

struct basis_config {
  int size = 200;  ///< N_b, harmonic states over both parities
  std::optional<double> omega;  ///< basis frequency; default max(1, mean-field omega)
};

struct diagonalization_result {
  double energy = 0;
  double shift_on_doubling = 0;  ///< |E(2 N_b) - E(N_b)|
  int size = 0;
  double omega = 1;
};

namespace detail {

/// <m| x^(2k) |n> for m, n in one parity sector of the first `size` states,
/// x = (a + a^+)/sqrt(2 Omega).
inline Eigen::MatrixXd even_power_matrix(int size, int parity, int k, double omega) {
  const int dim = (size - parity + 1) / 2;
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(dim, dim);
  const double scale = std::pow(2 * omega, -k);
  for (int col = 0; col < dim; ++col) {
    const int n = parity + 2 * col;
    std::vector<double> v(static_cast<std::size_t>(n + 2 * k + 2), 0.0);
    v[static_cast<std::size_t>(n)] = 1.0;
    int lo = n, hi = n;
    for (int step = 0; step < 2 * k; ++step) {
      std::vector<double> w(v.size(), 0.0);
      for (int j = lo; j <= hi; ++j) {
        const double c = v[static_cast<std::size_t>(j)];
        if (c == 0) continue;
        w[static_cast<std::size_t>(j + 1)] += std::sqrt(static_cast<double>(j + 1)) * c;
        if (j > 0) w[static_cast<std::size_t>(j - 1)] += std::sqrt(static_cast<double>(j)) * c;
      }
      v.swap(w);
      lo = std::max(0, lo - 1);
      ++hi;
    }
    for (int row = 0; row < dim; ++row) {
      const int m = parity + 2 * row;
      if (m >= lo && m <= hi) out(row, col) = scale * v[static_cast<std::size_t>(m)];
    }
  }
  return out;
}

inline double sector_eigenvalue(const oscillator_spec<double>& spec, int size, double omega,
                                unsigned level) {
  const int parity = static_cast<int>(level % 2);
  const int index = static_cast<int>(level / 2);
  const int dim = (size - parity + 1) / 2;
  if (index >= dim) throw domain_error("level outside the truncated basis");
  const double bare = spec.kind == oscillator_kind::qdwo ? -1.0 : 1.0;
  const int K = spec.anharmonic_power();

  Eigen::MatrixXd H = 0.5 * (bare - omega * omega) * even_power_matrix(size, parity, 1, omega) +
                      spec.g * even_power_matrix(size, parity, K, omega);
  for (int i = 0; i < dim; ++i) H(i, i) += omega * (parity + 2 * i + 0.5);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(H, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw convergence_error("symmetric eigensolver failed");
  return solver.eigenvalues()(index);
}

/// Mean-field frequency by bisection in double (no MPFR, so safe to call
/// from worker threads); 1 when the double well is below g_c.
inline double default_basis_omega(const oscillator_spec<double>& spec) {
  if (spec.kind == oscillator_kind::qdwo && !above_critical_coupling(spec)) return 1.0;
  double lo = 0, hi = 2 + std::cbrt(6 * spec.g * spectral_factor(spec.xi()));
  while (gap_residual(spec, hi) < 0) hi *= 2;
  for (int i = 0; i < 200 && hi - lo > 1e-14 * hi; ++i) {
    const double mid = (lo + hi) / 2;
    (gap_residual(spec, mid) < 0 ? lo : hi) = mid;
  }
  return std::max(1.0, (lo + hi) / 2);
}

}  // namespace detail

/// Eigenvalue `level` of H (in the Hamiltonian's own energy origin). The
/// basis is checked by doubling N_b; a shift above `tolerance` is a
/// convergence_error.
inline diagonalization_result diagonalize(const oscillator_spec<double>& spec, const basis_config& basis,
                                          unsigned level, double tolerance = 1e-8) {
  validate(spec);
  if (basis.size < 4) throw domain_error("basis needs at least 4 states");
  if (static_cast<int>(level) >= basis.size / 2) throw domain_error("level must be below N_b/2");
  const double omega = basis.omega.value_or(detail::default_basis_omega(spec));
  if (!(omega > 0)) throw domain_error("basis frequency must be positive");
  diagonalization_result out;
  out.size = basis.size;
  out.omega = omega;
  out.energy = detail::sector_eigenvalue(spec, basis.size, omega, level);
  const double doubled = detail::sector_eigenvalue(spec, 2 * basis.size, omega, level);
  out.shift_on_doubling = std::abs(doubled - out.energy);
  if (out.shift_on_doubling > tolerance)
    throw convergence_error("eigenvalue moved by " + std::to_string(out.shift_on_doubling) +
                            " when doubling the basis from " + std::to_string(basis.size));
  out.energy = doubled;
  return out;
}

/// Doubles N_b from `basis.size` until the eigenvalue is stable.
inline diagonalization_result diagonalize_converged(const oscillator_spec<double>& spec, basis_config basis,
                                                    unsigned level, double tolerance = 1e-8,
                                                    int max_size = 3200) {
  while (true) {
    try {
      return diagonalize(spec, basis, level, tolerance);
    } catch (const convergence_error&) {
      if (2 * basis.size > max_size) throw;
      basis.size *= 2;
    }
  }
}

// ---------------------------------------------------------------------------
// Sum over states

namespace detail {

/// Coefficients of H'|n) on the unnormalised basis |j).
template <class T>
std::vector<T> apply_perturbation(const perturbation<T>& h, int n) {
  const int K = h.power;
  const std::size_t size = static_cast<std::size_t>(n + 2 * K + 2);
  auto apply_ladder_sum = [&](const std::vector<T>& v) {
    std::vector<T> w(size, T(0));
    for (std::size_t j = 0; j + 1 < size; ++j) {
      if (v[j] == 0) continue;
      w[j + 1] += v[j];
      if (j > 0) w[j - 1] += T(static_cast<long>(j)) * v[j];
    }
    return w;
  };
  std::vector<T> state(size, T(0));
  state[static_cast<std::size_t>(n)] = T(1);
  std::vector<T> p2, current = state;
  for (int step = 1; step <= 2 * K; ++step) {
    current = apply_ladder_sum(current);
    if (step == 2) p2 = current;
  }
  T two_omega = 2 * h.omega;
  T scale_k(1);
  for (int i = 0; i < K; ++i) scale_k /= two_omega;
  std::vector<T> out(size, T(0));
  for (std::size_t j = 0; j < size; ++j)
    out[j] = h.g * scale_k * current[j] - h.x2_coupling / 2 / two_omega * p2[j] - h.shift * state[j];
  return out;
}

template <class T>
T factorial(int n) {
  T out(1);
  for (int k = 2; k <= n; ++k) out *= T(k);
  return out;
}

}  // namespace detail

/// E_order (order 1, 2 or 3) of the Rayleigh-Schroedinger series for H0 + H'
/// in state `level`, with H0 harmonic of frequency h.omega.
template <class T>
T rspt_sum_over_states(const perturbation<T>& h, unsigned level, int order) {
  if (order < 1 || order > 3) throw domain_error("sum-over-states oracle covers orders 1 to 3");
  const int n = static_cast<int>(level);
  const int band = 2 * h.power;
  const int lo = std::max(0, n - band);
  const int hi = n + band;

  // W(m, k) = <m|H'|k> / sqrt(m! k!) for m, k in [lo, hi].
  auto width = static_cast<std::size_t>(hi - lo + 1);
  std::vector<std::vector<T>> W(width, std::vector<T>(width, T(0)));
  for (int k = lo; k <= hi; ++k) {
    auto column = detail::apply_perturbation(h, k);
    const T kf = detail::factorial<T>(k);
    for (int m = lo; m <= hi; ++m)
      if (static_cast<std::size_t>(m) < column.size())
        W[static_cast<std::size_t>(m - lo)][static_cast<std::size_t>(k - lo)] = column[static_cast<std::size_t>(m)] / kf;
  }
  auto w = [&](int a, int b) -> const T& {
    return W[static_cast<std::size_t>(a - lo)][static_cast<std::size_t>(b - lo)];
  };
  auto gap = [&](int m) { return h.omega * T(n - m); };  // E_n^0 - E_m^0
  const T nf = detail::factorial<T>(n);

  const T diagonal = w(n, n) * nf;
  if (order == 1) return diagonal;

  T second(0);
  for (int m = lo; m <= hi; ++m) {
    if (m == n) continue;
    second += w(m, n) * w(m, n) * detail::factorial<T>(m) * nf / gap(m);
  }
  if (order == 2) return second;

  T third(0), renorm(0);
  for (int m = lo; m <= hi; ++m) {
    if (m == n) continue;
    const T mf = detail::factorial<T>(m);
    renorm += w(m, n) * w(m, n) * mf * nf / (gap(m) * gap(m));
    for (int k = lo; k <= hi; ++k) {
      if (k == n) continue;
      third += w(n, m) * w(m, k) * w(k, n) * nf * mf * detail::factorial<T>(k) / (gap(m) * gap(k));
    }
  }
  return third - diagonal * renorm;
}

template <class T>
T rspt_sum_over_states(const oscillator_spec<T>& spec, const mean_field<T>& mf, int order) {
  return rspt_sum_over_states(perturbation_of(spec, mf), spec.level, order);
}

}  // namespace mfpt
