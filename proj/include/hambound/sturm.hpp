#pragma once

#include <optional>
#include <vector>

#include "hambound/poly.hpp"

namespace hambound {

// Certified enclosure of a single real algebraic number: either an exact
// rational (lo == hi) or an open interval (lo, hi) containing exactly one
// root of the squarefree polynomial p, with a sign change across it.
struct RootBracket {
  Poly p;
  Rat lo, hi;
  int sign_lo = 0, sign_hi = 0;  // signs of p(lo), p(hi); 0 only when exact

  bool is_exact() const { return lo == hi; }
  std::optional<Rat> exact() const {
    if (is_exact()) return lo;
    return std::nullopt;
  }
  IV iv() const { return IV(lo, hi); }
};

// Sturm chain of a squarefree polynomial.
std::vector<Poly> sturm_chain(const Poly& squarefree);

int sign_variations(const std::vector<Poly>& chain, const Rat& x);

// Number of distinct roots in (a, b]; requires chain of squarefree poly.
int count_roots(const std::vector<Poly>& chain, const Rat& a, const Rat& b);

// All real roots of p (multiplicity ignored) inside the closed interval
// [lo, hi], in increasing order.  Exact rational roots come out exact.
std::vector<RootBracket> isolate_roots(const Poly& p, const Rat& lo, const Rat& hi);

// All real roots of p, using a Cauchy bound for the search range.
std::vector<RootBracket> isolate_all_roots(const Poly& p);

// Bisect until hi - lo <= width (no-op for exact roots).  May discover the
// root is rational and collapse to exact.
void refine_bracket(RootBracket& rb, const Rat& width);

// Exact comparison of the bracketed root against a rational:
// -1 root < x, 0 root == x, +1 root > x.  Never approximate.
int cmp_root_rat(const RootBracket& rb, const Rat& x);

}  // namespace hambound
