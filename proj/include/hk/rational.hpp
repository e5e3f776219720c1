#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <limits>
#include <string>
#include <string_view>

#include "hk/error.hpp"

namespace hk {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt numerator(const Rational& r) { return boost::multiprecision::numerator(r); }
inline BigInt denominator(const Rational& r) { return boost::multiprecision::denominator(r); }

inline BigInt floor_div(const BigInt& a, const BigInt& b) {
  BigInt q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

inline BigInt ceil_div(const BigInt& a, const BigInt& b) {
  BigInt q = a / b;
  if ((a % b != 0) && ((a < 0) == (b < 0))) ++q;
  return q;
}

inline BigInt floor(const Rational& r) { return floor_div(numerator(r), denominator(r)); }
inline BigInt ceil(const Rational& r) { return ceil_div(numerator(r), denominator(r)); }

inline std::int64_t to_int64(const BigInt& v) {
  if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min())
    throw OverflowError("integer does not fit in 64 bits: " + v.str());
  return static_cast<std::int64_t>(v);
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

// Serialized as "num/den", always with an explicit denominator.
inline std::string to_string(const Rational& r) {
  return numerator(r).str() + "/" + denominator(r).str();
}

// Accepts "a", "-a", "a/b".
inline Rational parse_rational(std::string_view text) {
  auto parse_int = [&](std::string_view s) -> BigInt {
    std::size_t i = 0;
    bool neg = false;
    while (i < s.size() && s[i] == ' ') ++i;
    if (i < s.size() && (s[i] == '-' || s[i] == '+')) neg = s[i++] == '-';
    if (i >= s.size()) throw ParseError("expected integer in rational '" + std::string(text) + "'", i);
    BigInt v = 0;
    for (; i < s.size(); ++i) {
      if (s[i] == ' ') continue;
      if (s[i] < '0' || s[i] > '9')
        throw ParseError("bad digit in rational '" + std::string(text) + "'", i);
      v = v * 10 + (s[i] - '0');
    }
    return neg ? BigInt(-v) : v;
  };
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text));
  BigInt den = parse_int(text.substr(slash + 1));
  if (den == 0) throw ParseError("zero denominator in '" + std::string(text) + "'", slash + 1);
  return Rational(parse_int(text.substr(0, slash)), den);
}

inline BigInt binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || n < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt r = 1;
  for (std::int64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

inline BigInt factorial(std::int64_t n) {
  BigInt r = 1;
  for (std::int64_t i = 2; i <= n; ++i) r *= i;
  return r;
}

inline BigInt ipow(const BigInt& base, std::int64_t e) {
  BigInt r = 1;
  for (std::int64_t i = 0; i < e; ++i) r *= base;
  return r;
}

// q^e for possibly negative e.
inline Rational rpow(const BigInt& base, std::int64_t e) {
  if (e >= 0) return Rational(ipow(base, e));
  return Rational(BigInt(1), ipow(base, -e));
}

}  // namespace hk
