#pragma once

#include <gmpxx.h>

#include <string>

#include "hambound/base.hpp"

namespace hambound {

using Int = mpz_class;
using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
  if (den == 0) throw ParamError("rational with zero denominator");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

inline Rat rat(const Int& num, const Int& den) {
  if (den == 0) throw ParamError("rational with zero denominator");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

// Accepts "p", "-p", "p/q" with optional sign; validates strictly.
Rat rat_from_string(const std::string& s);

std::string rat_to_string(const Rat& r);

inline int sgn(const Rat& r) { return ::sgn(r); }

Int floor_rat(const Rat& r);
Int ceil_rat(const Rat& r);

inline bool is_integer(const Rat& r) { return r.get_den() == 1; }

// base^e for integer e (negative allowed when base != 0).
Rat pow_rat(const Rat& base, long e);

// 2^e as a rational, e may be negative.
Rat pow2(long e);

Int binomial(long n, long k);
Int factorial(long n);

}  // namespace hambound
