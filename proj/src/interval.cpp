#include "hambound/interval.hpp"

namespace hambound {

IV operator+(const IV& a, const IV& b) { return IV(a.lo + b.lo, a.hi + b.hi); }

IV operator-(const IV& a, const IV& b) { return IV(a.lo - b.hi, a.hi - b.lo); }

IV operator-(const IV& a) { return IV(-a.hi, -a.lo); }

IV operator*(const IV& a, const IV& b) {
  Rat p1 = a.lo * b.lo, p2 = a.lo * b.hi, p3 = a.hi * b.lo, p4 = a.hi * b.hi;
  return IV(std::min(std::min(p1, p2), std::min(p3, p4)),
            std::max(std::max(p1, p2), std::max(p3, p4)));
}

IV operator*(const IV& a, const Rat& c) {
  if (sgn(c) >= 0) return IV(a.lo * c, a.hi * c);
  return IV(a.hi * c, a.lo * c);
}

IV operator/(const IV& a, const Rat& c) {
  if (c == 0) throw InternalError("interval division by zero scalar");
  return a * (Rat(1) / c);
}

IV recip(const IV& a) {
  if (a.contains_zero()) throw InternalError("reciprocal of interval containing zero");
  return IV(Rat(1) / a.hi, Rat(1) / a.lo);
}

IV ipow(const IV& a, unsigned e) {
  if (e == 0) return IV(Rat(1));
  if (e % 2 == 1 || a.lo >= 0) return IV(pow_rat(a.lo, e), pow_rat(a.hi, e));
  if (a.hi <= 0) return IV(pow_rat(a.hi, e), pow_rat(a.lo, e));
  // even power, straddles zero
  return IV(Rat(0), std::max(pow_rat(a.lo, e), pow_rat(a.hi, e)));
}

IV intersect(const IV& a, const IV& b) {
  Rat lo = std::max(a.lo, b.lo), hi = std::min(a.hi, b.hi);
  if (lo > hi) throw InternalError("intersection of disjoint intervals");
  return IV(lo, hi);
}

std::string iv_to_string(const IV& v) {
  return "[" + rat_to_string(v.lo) + ", " + rat_to_string(v.hi) + "]";
}

}  // namespace hambound
