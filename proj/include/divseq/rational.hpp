#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

#include "divseq/errors.hpp"

namespace divseq {

// The only scalar in the core: an exact arbitrary-precision fraction,
// kept canonical (positive denominator, reduced) by mpq_class.
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational rat(long num, long den = 1) {
  if (den == 0) throw input_error("rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline Integer floor_q(const Rational& q) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

inline Integer ceil_q(const Rational& q) {
  Integer r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

// Canonical serialized form "p/q", denominator always present.
inline std::string rational_to_string(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational parse_rational(const std::string& text);

// Clamps a non-negative integer to uint64_t; inputs at this scale never
// exceed it, anything larger is an input error.
inline std::uint64_t to_index(const Integer& z) {
  if (z < 0) return 0;
  if (!z.fits_ulong_p()) throw input_error("index out of range: " + z.get_str());
  return static_cast<std::uint64_t>(z.get_ui());
}

}  // namespace divseq
