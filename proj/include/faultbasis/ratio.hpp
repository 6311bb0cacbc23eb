#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>

#include "faultbasis/errors.hpp"

namespace faultbasis {

using BigInt = boost::multiprecision::cpp_int;

/// Exact rational arithmetic. Similarity scores, rates and thresholds are
/// ratios of small integers, but sums of them need arbitrary precision.
using Ratio = boost::rational<BigInt>;

inline Ratio ratio(long long num, long long den = 1) {
  return Ratio(BigInt(num), BigInt(den));
}

inline double to_double(const Ratio& r) {
  return boost::rational_cast<double>(r);
}

/// Lowest-terms "p/q" form, e.g. "1/2", "0/1".
inline std::string to_fraction_string(const Ratio& r) {
  return r.numerator().str() + "/" + r.denominator().str();
}

/// Percentage with two decimals, rounded half away from zero: 0.5 -> "50.00".
inline std::string to_percent_string(const Ratio& r) {
  const bool neg = r < Ratio(0);
  const Ratio a = neg ? -r : r;
  const BigInt p = a.numerator() * 10000;
  const BigInt q = a.denominator();
  const BigInt scaled = (2 * p + q) / (2 * q);  // round(p/q), nonneg operands
  const BigInt whole = scaled / 100;
  const unsigned cents = static_cast<unsigned>(scaled % 100);
  std::string out = neg ? "-" : "";
  out += whole.str();
  out += '.';
  out += static_cast<char>('0' + cents / 10);
  out += static_cast<char>('0' + cents % 10);
  return out;
}

/// Parses a nonnegative decimal literal ("0.8", "1", ".25") exactly.
inline Ratio parse_decimal(std::string_view text) {
  BigInt num = 0;
  BigInt den = 1;
  bool seen_digit = false;
  bool seen_dot = false;
  for (char c : text) {
    if (c == '.') {
      if (seen_dot) throw ParseError(0, "invalid decimal '" + std::string(text) + "'");
      seen_dot = true;
    } else if (c >= '0' && c <= '9') {
      num = num * 10 + (c - '0');
      if (seen_dot) den *= 10;
      seen_digit = true;
    } else {
      throw ParseError(0, "invalid decimal '" + std::string(text) + "'");
    }
  }
  if (!seen_digit) throw ParseError(0, "invalid decimal '" + std::string(text) + "'");
  return Ratio(num, den);
}

/// Exact value of a finite double (every finite double is a dyadic rational).
inline Ratio ratio_from_double(double x) {
  if (!std::isfinite(x)) throw Error("non-finite value has no rational form");
  if (x == 0.0) return Ratio(0);
  int exp = 0;
  const double mant = std::frexp(x, &exp);
  const auto scaled = static_cast<std::int64_t>(std::ldexp(mant, 53));
  exp -= 53;
  BigInt num = scaled;
  BigInt den = 1;
  if (exp > 0) {
    num <<= exp;
  } else {
    den <<= -exp;
  }
  return Ratio(num, den);
}

}  // namespace faultbasis
