#pragma once

// Arithmetic modes shared by every module: exact rationals over GMP and
// variable-precision binary floats over MPFR.

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <ios>
#include <string>
#include <string_view>
#include <type_traits>

#include "mfpt/errors.hpp"

namespace mfpt {

// Expression templates are off so that results of arithmetic are plain values
// (usable in ?:, std::max and auto deductions).
using integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;
using rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;
using real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                           boost::multiprecision::et_off>;

enum class arithmetic_mode { exact_rational, extended_precision };

inline constexpr unsigned default_precision_digits = 100;

template <class T>
inline constexpr bool is_exact_v = std::is_same_v<T, rational>;

template <class T>
inline constexpr arithmetic_mode mode_of_v =
    is_exact_v<T> ? arithmetic_mode::exact_rational
                  : arithmetic_mode::extended_precision;

inline const char* to_string(arithmetic_mode mode) {
  return mode == arithmetic_mode::exact_rational ? "rational" : "float";
}

/// Raised for malformed numeric text; reported as a usage error.
class parse_error : public error {
 public:
  explicit parse_error(const std::string& what)
      : error(error_category::usage, what) {}
};

/// Sets the MPFR working precision (decimal digits) for the lifetime of the
/// guard and restores the previous value on exit. Values created inside the
/// scope keep their precision afterwards. The setting is process-wide; a guard
/// that asks for the current value writes nothing, so threads sharing one D
/// may create guards freely.
class precision_guard {
 public:
  explicit precision_guard(unsigned digits10)
      : previous_(real::default_precision()) {
    if (digits10 < 10) throw domain_error("precision must be at least 10 digits");
    if (digits10 != previous_) real::default_precision(digits10);
  }
  ~precision_guard() {
    if (real::default_precision() != previous_) real::default_precision(previous_);
  }

  precision_guard(const precision_guard&) = delete;
  precision_guard& operator=(const precision_guard&) = delete;

 private:
  unsigned previous_;
};

inline unsigned working_digits() { return real::default_precision(); }

/// 10^(-exponent) at working precision.
inline real decimal_tolerance(int exponent) {
  return boost::multiprecision::pow(real(10), -exponent);
}

// ---------------------------------------------------------------------------
// Parsing. Accepts "p/q", integers and decimal literals with an optional
// exponent ("0.1", "-2.5e-3"). Decimal literals are converted exactly, so
// "0.1" is 1/10 and not the nearest double.

inline rational parse_rational(std::string_view text) {
  auto fail = [&] {
    return parse_error("not a rational or decimal number: '" + std::string(text) + "'");
  };
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) throw fail();

  auto parse_integer = [&](std::string_view digits) {
    std::string s(digits);
    if (s.empty()) throw fail();
    std::size_t i = (s[0] == '+' || s[0] == '-') ? 1 : 0;
    if (i == s.size()) throw fail();
    for (std::size_t k = i; k < s.size(); ++k)
      if (!std::isdigit(static_cast<unsigned char>(s[k]))) throw fail();
    if (s[0] == '+') s.erase(0, 1);
    const std::size_t sign = s[0] == '-' ? 1 : 0;
    const std::size_t first = s.find_first_not_of('0', sign);
    s.erase(sign, (first == std::string::npos ? s.size() - 1 : first) - sign);
    return integer(s);
  };

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    integer num = parse_integer(text.substr(0, slash));
    integer den = parse_integer(text.substr(slash + 1));
    if (den == 0) throw parse_error("zero denominator in '" + std::string(text) + "'");
    return rational(num, den);
  }

  std::string_view mantissa = text;
  long exponent = 0;
  if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    mantissa = text.substr(0, e);
    integer exp_value = parse_integer(text.substr(e + 1));
    if (boost::multiprecision::abs(exp_value) > 100000) throw fail();
    exponent = exp_value.convert_to<long>();
  }
  bool negative = false;
  if (!mantissa.empty() && (mantissa.front() == '+' || mantissa.front() == '-')) {
    negative = mantissa.front() == '-';
    mantissa.remove_prefix(1);
  }
  std::string digits;
  long fraction_digits = 0;
  bool seen_point = false;
  for (char c : mantissa) {
    if (c == '.' && !seen_point) {
      seen_point = true;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      digits.push_back(c);
      if (seen_point) ++fraction_digits;
    } else {
      throw fail();
    }
  }
  if (digits.empty()) throw fail();
  // A leading zero would make the integer constructor read octal.
  digits.erase(0, std::min(digits.find_first_not_of('0'), digits.size() - 1));
  rational value{integer(digits)};
  long scale = exponent - fraction_digits;
  integer power = boost::multiprecision::pow(integer(10), static_cast<unsigned>(std::labs(scale)));
  value = scale >= 0 ? value * power : value / power;
  return negative ? rational(-value) : value;
}

// ---------------------------------------------------------------------------
// Conversions

inline real to_real(const rational& q) {
  return real(boost::multiprecision::numerator(q)) /
         real(boost::multiprecision::denominator(q));
}
inline real to_real(const real& x) { return x; }

template <class T>
T from_rational(const rational& q) {
  if constexpr (is_exact_v<T>) {
    return q;
  } else if constexpr (std::is_floating_point_v<T>) {
    return to_real(q).template convert_to<T>();
  } else {
    return to_real(q);
  }
}

template <class T>
double to_double(const T& x) {
  if constexpr (std::is_floating_point_v<T>) {
    return static_cast<double>(x);
  } else if constexpr (is_exact_v<T>) {
    return to_real(x).template convert_to<double>();
  } else {
    return x.template convert_to<double>();
  }
}

/// "n/d", or "n" for integers.
inline std::string to_string(const rational& q) { return q.str(); }

/// Scientific notation; `digits == 0` emits enough digits to round-trip at
/// the value's own precision.
inline std::string to_string(const real& x, std::streamsize digits = 0) {
  if (x == 0) return "0";
  return x.str(digits, std::ios_base::scientific);
}

/// Best rational approximation with denominator <= max_denominator, from the
/// continued-fraction expansion of x.
inline rational best_rational(const real& x, const integer& max_denominator) {
  using boost::multiprecision::floor;
  integer p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  real rest = x;
  for (int iter = 0; iter < 200; ++iter) {
    real fl = floor(rest);
    integer a = fl.convert_to<integer>();
    integer p2 = a * p1 + p0;
    integer q2 = a * q1 + q0;
    if (q2 > max_denominator) break;
    p0 = p1; q0 = q1; p1 = p2; q1 = q2;
    real frac = rest - fl;
    if (frac == 0 || boost::multiprecision::abs(frac) < decimal_tolerance(static_cast<int>(working_digits()) - 5))
      break;
    rest = 1 / frac;
  }
  if (q1 == 0) return rational(p0, q0);
  return rational(p1, q1);
}

}  // namespace mfpt
