#pragma once

#include <gtest/gtest.h>

#include <random>
#include <string>
#include <vector>

#include "mfpt/model.hpp"
#include "mfpt/scalar.hpp"

namespace mfpt::test {

inline rational q(const std::string& text) { return parse_rational(text); }

inline oscillator_spec<rational> make_spec(oscillator_kind kind, const std::string& g, unsigned n = 0) {
  return oscillator_spec<rational>{kind, q(g), n};
}

/// <n| (a + a^+)^(2k) |n>, applying the ladder operators 2k times to the
/// unnormalised state (a^+)^n |0>. Raising carries weight 1 and lowering
/// from j carries weight j; the final |n) coefficient is the matrix element.
inline integer ladder_walk(unsigned n, unsigned k) {
  std::vector<integer> weight(n + 2 * k + 2, 0);
  weight[n] = 1;
  for (unsigned step = 0; step < 2 * k; ++step) {
    std::vector<integer> next(weight.size(), 0);
    for (std::size_t j = 0; j + 1 < weight.size(); ++j) {
      if (weight[j] == 0) continue;
      next[j + 1] += weight[j];
      if (j > 0) next[j - 1] += weight[j] * integer(static_cast<long>(j));
    }
    weight.swap(next);
  }
  return weight[n];
}

/// <n|x^(2k)|n> at frequency w, from the path count.
template <class T>
T oracle_moment(unsigned n, unsigned k, const T& w) {
  T scale = 1;
  for (unsigned i = 0; i < k; ++i) scale /= 2 * w;
  if constexpr (is_exact_v<T>) {
    return scale * rational(ladder_walk(n, k));
  } else {
    return scale * T(ladder_walk(n, k));
  }
}

/// Deterministic generator for the property tests.
inline std::mt19937_64& rng() {
  static std::mt19937_64 engine(20240917);
  return engine;
}

/// A random spec with g = a/b drawn so the double well stays above g_c.
inline oscillator_spec<rational> random_spec() {
  std::uniform_int_distribution<int> kind_pick(0, 2), num(1, 2000), den(1, 200), level(0, 4);
  oscillator_spec<rational> s;
  s.kind = static_cast<oscillator_kind>(kind_pick(rng()));
  s.level = static_cast<unsigned>(level(rng()));
  s.g = rational(num(rng()), den(rng()));
  if (s.kind == oscillator_kind::qdwo && !above_critical_coupling(s)) s.g += 1;
  return s;
}

}  // namespace mfpt::test
