#pragma once

// Published ground-state benchmark rows (13 points over the three kinds),
// stored as printed so that comparisons can work in units of the last
// printed digit. Energies of the double well are quoted with the
// well-bottom origin (see energy_origin).

#include <array>
#include <string>
#include <string_view>

#include "mfpt/model.hpp"
#include "mfpt/scalar.hpp"

namespace mfpt {

struct reference_row {
  oscillator_kind kind;
  std::string_view g;
  int N0;
  std::string_view E_mot;
  std::string_view er_mot;
  std::string_view r_c;
  int N_c;
  std::string_view delta_E;
  std::string_view E0;
  std::string_view E_tot;
  std::string_view exact;
  std::string_view er_tot;
  std::string_view gamma;  ///< Borel exponent used for the row
};

inline constexpr std::array<reference_row, 13> reference_rows{{
    {oscillator_kind::qaho, "0.1", 6, "0.5593", "0.03", "6.071", 6, "-0.00116", "0.5603", "0.5591", "0.5591", "0.008", "1"},
    {oscillator_kind::qaho, "1", 3, "0.8074", "0.44", "2.667", 7, "-0.00869", "0.8125", "0.8038", "0.8038", "0.004", "1"},
    {oscillator_kind::qaho, "10", 3, "1.5204", "1.02", "2.133", 8, "-0.02619", "1.5312", "1.5050", "1.5050", "0.002", "1"},
    {oscillator_kind::qaho, "100", 3, "3.1701", "1.23", "2.028", 10, "-0.06101", "3.1924", "1.1314", "3.1314", "0.0005", "1"},
    {oscillator_kind::saho, "0.1", 2, "0.5787", "1.40", "13.3", 20, "-0.0095", "0.5964", "0.5869", "0.5869", "0.001", "1/2"},
    {oscillator_kind::saho, "1", 2, "0.7694", "4.42", "8.56", 20, "-0.0328", "0.8378", "0.8050", "0.8050", "0.002", "1/2"},
    {oscillator_kind::saho, "50", 2, "1.7241", "7.23", "7.14", 20, "-0.1149", "1.9735", "1.8586", "1.8585", "0.007", "1/2"},
    {oscillator_kind::saho, "200", 2, "2.3986", "7.54", "7.02", 20, "-0.1662", "2.7606", "2.5944", "2.5942", "0.007", "1/2"},
    {oscillator_kind::qdwo, "0.1", 2, "0.4107", "12.79", "0.95", 26, "-0.0787", "0.5496", "0.4709", "0.4709", "0.00006", "0.8196"},
    {oscillator_kind::qdwo, "0.5", 2, "0.4414", "2.74", "1.191", 20, "-0.0232", "0.4770", "0.4538", "0.4538", "0.0027", "1"},
    {oscillator_kind::qdwo, "1", 3, "0.5667", "1.83", "1.455", 11, "-0.0216", "0.5989", "0.5773", "0.5773", "0.0042", "1"},
    {oscillator_kind::qdwo, "10", 3, "1.4007", "1.66", "1.872", 20, "-0.0320", "1.4098", "1.3778", "1.3778", "0.0040", "1"},
    {oscillator_kind::qdwo, "100", 3, "3.1122", "1.37", "1.972", 18, "-0.0637", "3.1338", "3.0701", "3.0701", "0.0005", "1"},
}};

/// One unit in the last printed decimal place: "0.5593" -> 1e-4.
inline rational last_digit_unit(std::string_view printed) {
  auto point = printed.find('.');
  if (point == std::string_view::npos) return rational(1);
  const auto places = static_cast<unsigned>(printed.size() - point - 1);
  return rational(1, boost::multiprecision::pow(integer(10), places));
}

/// |computed - printed| in units of the last printed digit.
inline double last_digit_deviation(const real& computed, std::string_view printed) {
  const real printed_value = to_real(parse_rational(printed));
  const real unit = to_real(last_digit_unit(printed));
  return real(boost::multiprecision::abs(computed - printed_value) / unit).convert_to<double>();
}

inline oscillator_spec<rational> spec_of(const reference_row& row) {
  oscillator_spec<rational> spec;
  spec.kind = row.kind;
  spec.g = parse_rational(row.g);
  spec.level = 0;
  return spec;
}

}  // namespace mfpt
