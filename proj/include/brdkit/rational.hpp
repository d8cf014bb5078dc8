#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace brdkit {

using Rational = mpq_class;
using BigInt = mpz_class;

/// Parses "p/q" (lowest terms, q > 0) or a bare nonnegative integer "p".
Rational parse_rational(std::string_view text);

/// Always renders "p/q", including integers ("1/1", "0/1").
std::string to_string(const Rational& value);

inline Rational make_rational(long num, long den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

}  // namespace brdkit
