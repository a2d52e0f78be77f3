#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <string_view>

#include "quasipack/error.hpp"

namespace quasipack {

using integer = boost::multiprecision::cpp_int;
using rational = boost::multiprecision::cpp_rational;

// Accepts "a/b", "a" and "-a/b". Denominator must be nonzero.
inline rational parse_rational(std::string_view text) {
  auto parse_int = [&](std::string_view s) {
    if (s.empty()) throw error(error_kind::invalid_parameters, "empty number in '" + std::string(text) + "'");
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) throw error(error_kind::invalid_parameters, "bad rational '" + std::string(text) + "'");
    for (std::size_t j = i; j < s.size(); ++j)
      if (s[j] < '0' || s[j] > '9')
        throw error(error_kind::invalid_parameters, "bad rational '" + std::string(text) + "'");
    return integer(std::string(s[0] == '+' ? s.substr(1) : s));
  };
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return rational(parse_int(text));
  integer num = parse_int(text.substr(0, slash));
  integer den = parse_int(text.substr(slash + 1));
  if (den == 0) throw error(error_kind::invalid_parameters, "zero denominator in '" + std::string(text) + "'");
  return rational(num, den);
}

// Always "a/b", even for integers, so the output is unambiguous to parse.
inline std::string format_rational(const rational& value) {
  return boost::multiprecision::numerator(value).str() + "/" +
         boost::multiprecision::denominator(value).str();
}

inline rational power(const rational& base, std::uint64_t exponent) {
  rational result = 1;
  rational b = base;
  while (exponent) {
    if (exponent & 1) result *= b;
    b *= b;
    exponent >>= 1;
  }
  return result;
}

inline double to_double(const rational& value) { return value.convert_to<double>(); }

// Numerator/denominator as machine integers; throws if either does not fit.
struct small_fraction {
  std::int64_t num;
  std::int64_t den;
};

inline small_fraction to_small_fraction(const rational& value) {
  integer num = boost::multiprecision::numerator(value);
  integer den = boost::multiprecision::denominator(value);
  constexpr std::int64_t limit = std::int64_t{1} << 31;
  if (abs(num) > limit || den > limit)
    throw error(error_kind::invalid_parameters, "fraction " + format_rational(value) + " has oversized terms");
  return {num.convert_to<std::int64_t>(), den.convert_to<std::int64_t>()};
}

}  // namespace quasipack
