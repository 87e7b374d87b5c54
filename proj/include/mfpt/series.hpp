#pragma once

// Perturbation corrections E_p about the mean-field Hamiltonian, generated by
// the hypervirial recursion for the moments X(j,i) (coefficient of eta^i in
// <x^(2j)> for H0 + eta H') together with the Feynman-Hellmann relation
//
//   E_1   = g X(K,0) - (lambda/2) X(1,0) - h0
//   p E_p = g X(K,p-1) - (lambda/2) X(1,p-1),   p >= 2,
//
// where lambda is the x^2 coupling of H' (w^2 - 1 for the AHO kinds and
// w^2 + 1 for the double well).

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "mfpt/errors.hpp"
#include "mfpt/model.hpp"
#include "mfpt/scalar.hpp"

namespace mfpt {

template <class T>
class recursion_coefficients {
 public:
  explicit recursion_coefficients(const perturbation<T>& h)
      : omega2_(h.omega * h.omega),
        h0_(h.shift),
        g_(h.g),
        power_(h.power),
        e_omega_(h.x2_coupling / (h.omega * h.omega)) {}

  T a(int j) const { return (-h0_ / omega2_) * T(2 * j - 1) / T(j); }
  T b(int j) const { return T(2 * j - 1) / (omega2_ * T(j)); }
  T c(int j) const {
    return T(j - 1) * T(4 * (j - 1) * (j - 1) - 1) / (T(4 * j) * omega2_);
  }
  T f(int j) const { return (g_ / omega2_) * T(2 * j - 1 + power_) / T(j); }
  const T& e_omega() const { return e_omega_; }
  int power() const { return power_; }

 private:
  T omega2_, h0_, g_;
  int power_;
  T e_omega_;
};

/// X(j,i) with the boundary conditions X(0,i) = delta_{0i} and X(j,i) = 0
/// for j < 0 or i < 0. Level i holds 1 <= j <= (K-1)(P-i)+1.
template <class T>
class moment_table {
 public:
  moment_table() = default;
  moment_table(int power, int max_order) : power_(power), max_order_(max_order) {
    levels_.resize(static_cast<std::size_t>(max_order));
    for (int i = 0; i < max_order; ++i)
      levels_[static_cast<std::size_t>(i)].assign(static_cast<std::size_t>(max_j(i)), T(0));
  }

  int max_order() const { return max_order_; }
  int max_j(int level) const { return (power_ - 1) * (max_order_ - level) + 1; }

  T at(int j, int i) const {
    if (j < 0 || i < 0) return T(0);
    if (j == 0) return i == 0 ? T(1) : T(0);
    if (i >= max_order_ || j > max_j(i))
      throw std::out_of_range("moment X(j,i) outside the populated range");
    return levels_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j - 1)];
  }

  void set(int j, int i, T value) {
    levels_.at(static_cast<std::size_t>(i)).at(static_cast<std::size_t>(j - 1)) = std::move(value);
  }

 private:
  int power_ = 2;
  int max_order_ = 0;
  std::vector<std::vector<T>> levels_;
};

template <class T>
struct correction_series {
  oscillator_spec<T> spec;
  mean_field<T> mf;
  std::vector<T> corrections;  ///< E_0 .. E_P
  arithmetic_mode mode = mode_of_v<T>;
  moment_table<T> table;
  std::vector<T> error_bounds;  ///< float mode only: running rounding-error bound per E_p

  int max_order() const { return static_cast<int>(corrections.size()) - 1; }
};

namespace detail {

template <class T>
struct recursion_output {
  std::vector<T> corrections;
  moment_table<T> table;
  std::vector<T> error_bounds;
};

template <class T>
T magnitude(const T& x) {
  return x < 0 ? T(-x) : x;
}

/// Fills the table level by level (j ascending inside a level) and extracts
/// E_{i+1} once level i is complete. Every reference to level i-1 lies in
/// the range populated for that level.
template <class T>
recursion_output<T> run_recursion(const perturbation<T>& h, const T& E0, int max_order) {
  if (max_order < 1) throw domain_error("maximum order must be at least 1");
  const int K = h.power;
  const recursion_coefficients<T> rc(h);
  recursion_output<T> out;
  out.table = moment_table<T>(K, max_order);
  out.corrections.reserve(static_cast<std::size_t>(max_order + 1));
  out.corrections.push_back(E0);
  const auto& E = out.corrections;
  auto& X = out.table;

  // Float mode carries a second table of absolute-value sums, a running
  // bound on the rounding error accumulated in each entry.
  constexpr bool track = !is_exact_v<T>;
  moment_table<T> A;
  std::vector<T> absE;
  if constexpr (track) {
    A = moment_table<T>(K, max_order);
    absE.push_back(magnitude(E0));
    out.error_bounds.push_back(T(0));
  }
  auto absX = [&](int j, int i) { return magnitude(A.at(j, i)); };

  for (int i = 0; i < max_order; ++i) {
    const int jmax = X.max_j(i);
    for (int j = 1; j <= jmax; ++j) {
      const T aj = rc.a(j), bj = rc.b(j), cj = rc.c(j), fj = rc.f(j);
      T conv(0);
      for (int m = 0; m <= i; ++m) conv += E[static_cast<std::size_t>(m)] * X.at(j - 1, i - m);
      T value = aj * X.at(j - 1, i) + bj * conv + cj * X.at(j - 2, i) -
                aj * X.at(j - 1, i - 1) + rc.e_omega() * X.at(j, i - 1) -
                fj * X.at(j + K - 1, i - 1);
      X.set(j, i, std::move(value));
      if constexpr (track) {
        T aconv(0);
        for (int m = 0; m <= i; ++m) aconv += absE[static_cast<std::size_t>(m)] * absX(j - 1, i - m);
        T bound = magnitude(aj) * absX(j - 1, i) + magnitude(bj) * aconv +
                  magnitude(cj) * absX(j - 2, i) + magnitude(aj) * absX(j - 1, i - 1) +
                  magnitude(rc.e_omega()) * absX(j, i - 1) + magnitude(fj) * absX(j + K - 1, i - 1);
        A.set(j, i, std::move(bound));
      }
    }

    const int p = i + 1;
    T Ep = h.g * X.at(K, i) - h.x2_coupling / 2 * X.at(1, i);
    if (p == 1) {
      Ep -= h.shift;
    } else {
      Ep /= T(p);
    }
    if constexpr (track) {
      T bound = magnitude(h.g) * absX(K, i) + magnitude(h.x2_coupling) / 2 * absX(1, i);
      if (p == 1) bound += magnitude(h.shift);
      else bound /= T(p);
      absE.push_back(bound);
      const T eps = decimal_tolerance(static_cast<int>(working_digits()));
      T err = eps * bound * T(16 * (max_order + 1));
      if (p >= 2 && err > decimal_tolerance(static_cast<int>(working_digits()) / 2) * magnitude(Ep)) {
        throw precision_error("order " + std::to_string(p) +
                              " lost more than half of the working digits to cancellation;"
                              " raise the precision");
      }
      out.error_bounds.push_back(std::move(err));
    }
    out.corrections.push_back(std::move(Ep));
  }
  return out;
}

}  // namespace detail

/// E_0 .. E_P for the mean-field perturbation series of `spec`.
template <class T>
correction_series<T> compute_corrections(const oscillator_spec<T>& spec, const mean_field<T>& mf,
                                         int max_order) {
  validate(spec);
  auto out = detail::run_recursion(perturbation_of(spec, mf), mf.E0, max_order);
  correction_series<T> series;
  series.spec = spec;
  series.mf = mf;
  series.corrections = std::move(out.corrections);
  series.table = std::move(out.table);
  series.error_bounds = std::move(out.error_bounds);
  return series;
}

template <class T>
correction_series<T> compute_corrections(const oscillator_spec<T>& spec, int max_order) {
  return compute_corrections(spec, solve_gap(spec), max_order);
}

/// Bare-well perturbation about p^2/2 + x^2/2: H' = g x^(2K).
template <class T>
perturbation<T> bare_perturbation(const oscillator_spec<T>& spec) {
  if (spec.kind == oscillator_kind::qdwo)
    throw domain_error("bare-well expansion is not defined for the double well");
  return perturbation<T>{T(1), T(1), spec.anharmonic_power(), T(0), T(0)};
}

/// Standard Rayleigh-Schroedinger coefficients of g^k about the bare
/// harmonic well, from the same recursion with w = 1, h0 = 0 and g = 1.
template <class T>
correction_series<T> sfpt_corrections(const oscillator_spec<T>& spec, int max_order) {
  const perturbation<T> h = bare_perturbation(spec);
  const T xi = spec.xi();
  auto out = detail::run_recursion(h, xi, max_order);
  correction_series<T> series;
  series.spec = spec;
  series.mf = mean_field<T>{T(1), T(0), T(0), xi, mean_field_phase::aho};
  series.corrections = std::move(out.corrections);
  series.table = std::move(out.table);
  series.error_bounds = std::move(out.error_bounds);
  return series;
}

/// Converts an exact series to working-precision floats.
inline correction_series<real> to_float_series(const correction_series<rational>& s) {
  correction_series<real> out;
  out.spec = convert_spec<real>(s.spec);
  out.mf = mean_field<real>{to_real(s.mf.omega), to_real(s.mf.h0), to_real(s.mf.sigma),
                            to_real(s.mf.E0), s.mf.phase};
  for (const auto& e : s.corrections) out.corrections.push_back(to_real(e));
  out.mode = arithmetic_mode::extended_precision;
  return out;
}

inline const correction_series<real>& to_float_series(const correction_series<real>& s) { return s; }

struct certified_series {
  correction_series<real> series;
  std::vector<int> certified_digits;  ///< agreeing decimal digits per E_p against a D+40 rerun
};

/// Runs the recursion at the working precision D and again at D + 40, and
/// reports how many digits of each correction survive.
inline certified_series certify_corrections(const oscillator_spec<rational>& spec, int max_order) {
  const unsigned digits = working_digits();
  certified_series out;
  out.series = compute_corrections(convert_spec<real>(spec), max_order);
  std::vector<real> reference;
  {
    precision_guard guard(digits + 40);
    auto fine = compute_corrections(convert_spec<real>(spec), max_order);
    reference = fine.corrections;
  }
  for (std::size_t p = 0; p < reference.size(); ++p) {
    real diff = boost::multiprecision::abs(out.series.corrections[p] - reference[p]);
    real scale = boost::multiprecision::abs(reference[p]);
    int agreed = static_cast<int>(digits);
    if (diff != 0 && scale != 0) {
      real ratio = diff / scale;
      agreed = std::max(0, static_cast<int>(
                               boost::multiprecision::floor(-boost::multiprecision::log10(ratio))
                                   .convert_to<long>()));
    } else if (diff != 0) {
      agreed = 0;
    }
    out.certified_digits.push_back(std::min(agreed, static_cast<int>(digits)));
  }
  return out;
}

}  // namespace mfpt
