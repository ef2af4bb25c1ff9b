#pragma once

#include <gmpxx.h>

#include <cmath>
#include <string>
#include <string_view>

#include "nblp/errors.hpp"

namespace nblp {

/// Exact rational number. GMP keeps values canonical (reduced, positive
/// denominator) as long as they are produced through arithmetic; inputs
/// parsed from text are canonicalized explicitly.
using Rational = mpq_class;

/// Builds num/den as a canonical rational. Throws on den == 0.
inline Rational make_rational(long num, long den = 1) {
  if (den == 0) throw Error("rational with zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

/// Parses "num", "-num", or "num/den" (optionally signed) into a canonical
/// rational. Rejects anything else, including empty input and den == 0.
inline Rational parse_rational(std::string_view text) {
  if (text.empty()) throw ParseError("empty rational");
  const std::string s(text);
  for (char c : s) {
    if ((c < '0' || c > '9') && c != '/' && c != '-' && c != '+')
      throw ParseError("bad rational: '" + s + "'");
  }
  try {
    Rational r(s);
    if (r.get_den() == 0) throw ParseError("zero denominator: '" + s + "'");
    r.canonicalize();
    return r;
  } catch (const std::invalid_argument&) {
    throw ParseError("bad rational: '" + s + "'");
  }
}

/// Canonical text form: "num/den", or just "num" for integers.
inline std::string format_rational(const Rational& r) {
  return r.get_str();
}

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

/// Exact double -> rational embedding. Every finite double is a dyadic
/// rational, so the default loses nothing. `precision_bits` below 53 rounds
/// the mantissa to that many significant bits first (ties to even).
inline Rational embed_double(double x, int precision_bits = 53) {
  if (!std::isfinite(x)) throw Error("cannot embed non-finite value");
  if (precision_bits < 1 || precision_bits > 53)
    throw Error("embedding precision out of range");
  if (precision_bits < 53 && x != 0.0) {
    int e = 0;
    double m = std::frexp(x, &e);  // x == m * 2^e with 0.5 <= |m| < 1
    x = std::ldexp(std::nearbyint(std::ldexp(m, precision_bits)),
                   e - precision_bits);
  }
  return Rational(x);
}

}  // namespace nblp
