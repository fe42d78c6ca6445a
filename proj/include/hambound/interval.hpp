#pragma once

#include <algorithm>
#include <string>

#include "hambound/rational.hpp"

namespace hambound {

// Closed interval with exact rational endpoints.  All arithmetic is outward
// in the trivial sense: endpoints are exact, so results are tight hulls.
struct IV {
  Rat lo, hi;

  IV() : lo(0), hi(0) {}
  explicit IV(const Rat& x) : lo(x), hi(x) {}
  IV(Rat a, Rat b) : lo(std::move(a)), hi(std::move(b)) {
    if (lo > hi) throw InternalError("interval with lo > hi");
  }

  static IV point(const Rat& x) { return IV(x); }
  static IV hull(const IV& a, const IV& b) {
    return IV(std::min(a.lo, b.lo), std::max(a.hi, b.hi));
  }

  Rat width() const { return hi - lo; }
  Rat mid() const { return (lo + hi) / 2; }
  bool is_point() const { return lo == hi; }
  bool contains(const Rat& x) const { return lo <= x && x <= hi; }
  bool contains_zero() const { return lo <= 0 && 0 <= hi; }
  bool contains(const IV& o) const { return lo <= o.lo && o.hi <= hi; }
  bool intersects(const IV& o) const { return lo <= o.hi && o.lo <= hi; }

  bool certainly_positive() const { return lo > 0; }
  bool certainly_negative() const { return hi < 0; }
  bool certainly_nonneg() const { return lo >= 0; }
  bool certainly_nonpos() const { return hi <= 0; }
  bool certainly_lt(const IV& o) const { return hi < o.lo; }
  bool certainly_gt(const IV& o) const { return lo > o.hi; }
};

IV operator+(const IV& a, const IV& b);
IV operator-(const IV& a, const IV& b);
IV operator-(const IV& a);
IV operator*(const IV& a, const IV& b);
IV operator*(const IV& a, const Rat& c);
inline IV operator*(const Rat& c, const IV& a) { return a * c; }
IV operator/(const IV& a, const Rat& c);

inline IV& operator+=(IV& a, const IV& b) { return a = a + b; }
inline IV& operator-=(IV& a, const IV& b) { return a = a - b; }
inline IV& operator*=(IV& a, const IV& b) { return a = a * b; }

// Reciprocal; throws InternalError if the interval straddles zero.
IV recip(const IV& a);
inline IV operator/(const IV& a, const IV& b) { return a * recip(b); }

IV ipow(const IV& a, unsigned e);

IV intersect(const IV& a, const IV& b);  // throws InternalError if disjoint

std::string iv_to_string(const IV& v);

}  // namespace hambound
