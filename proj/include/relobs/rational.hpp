#pragma once

#include <array>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "relobs/errors.hpp"

namespace relobs {

/// Arbitrary-precision rational. Always stored normalized (gcd 1, positive
/// denominator) by the backing type.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline bool isZero(const Rational& r) { return r.is_zero(); }

inline int signOf(const Rational& r) { return r.sign(); }

/// "p/q" with the "/q" suffix omitted for integers.
inline std::string toString(const Rational& r) {
  std::string s = numerator(r).str();
  if (denominator(r) != 1) s += "/" + denominator(r).str();
  return s;
}

/// Parses "p", "-p", or "p/q". Throws ParseError on anything else.
inline Rational parseRational(const std::string& text) {
  auto bad = [&] { return ParseError("not a rational literal: '" + text + "'"); };
  if (text.empty()) throw bad();
  std::size_t slash = text.find('/');
  try {
    if (slash == std::string::npos) return Rational(BigInt(text));
    BigInt num(text.substr(0, slash));
    BigInt den(text.substr(slash + 1));
    if (den == 0) throw bad();
    return Rational(num, den);
  } catch (const std::runtime_error&) {
    throw bad();
  }
}

inline double toDouble(const Rational& r) { return r.convert_to<double>(); }

}  // namespace relobs
