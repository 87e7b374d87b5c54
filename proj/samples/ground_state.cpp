// Ground state of x^4 oscillator at g = 1: exact low orders, then the
// resummed energy next to the diagonalization value.

#include <iostream>

#include "mfpt/oracle.hpp"
#include "mfpt/resum.hpp"
#include "mfpt/series.hpp"

int main() {
  using namespace mfpt;
  precision_guard digits(60);

  oscillator_spec<rational> spec{oscillator_kind::qaho, rational(1), 0};
  auto exact = compute_corrections(spec, 5);
  for (int p = 0; p <= exact.max_order(); ++p) std::cout << "E" << p << " = " << exact.corrections[p] << "\n";

  auto series = compute_corrections(convert_spec<real>(spec), 40);
  auto mot = optimal_truncation(series);
  auto est = estimate_singularity(series, real(1));

  borel_config cfg;
  cfg.r_c = est.r_c;
  cfg.N_c = 12;
  auto borel = borel_sum(series, cfg);

  oscillator_spec<double> plain{oscillator_kind::qaho, 1.0, 0};
  std::cout << "E_MOT  " << mot.E_tot.str(8) << " (N0 = " << mot.order << ")\n"
            << "r_c    " << est.r_c.str(6) << ", p = " << est.p_exp.str(4) << "\n"
            << "E_tot  " << borel.E_tot.str(8) << "\n"
            << "exact  " << diagonalize(plain, {}, 0).energy << "\n";
}
