#include "hambound/sturm.hpp"

namespace hambound {

namespace {

// Scale by a positive rational so coefficients become coprime integers.
// Positive scaling preserves signs, hence the Sturm property.
Poly primitive(const Poly& p) {
  if (p.is_zero()) return p;
  Int den_lcm(1), num_gcd(0);
  for (const auto& c : p.coeffs) {
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den().get_mpz_t());
  }
  Poly q = p * Rat(den_lcm);
  for (const auto& c : q.coeffs) {
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.get_num().get_mpz_t());
  }
  if (num_gcd > 1) q = q / Rat(num_gcd);
  return q;
}

}  // namespace

std::vector<Poly> sturm_chain(const Poly& squarefree) {
  std::vector<Poly> chain;
  if (squarefree.is_zero()) return chain;
  chain.push_back(primitive(squarefree));
  if (squarefree.degree() == 0) return chain;
  chain.push_back(primitive(derivative(squarefree)));
  while (!chain.back().is_zero() && chain.back().degree() > 0) {
    Poly r = divrem(chain[chain.size() - 2], chain.back()).second;
    if (r.is_zero()) break;
    chain.push_back(primitive(-r));
  }
  return chain;
}

int sign_variations(const std::vector<Poly>& chain, const Rat& x) {
  int var = 0, prev = 0;
  for (const auto& p : chain) {
    int s = sgn(p(x));
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++var;
    prev = s;
  }
  return var;
}

int count_roots(const std::vector<Poly>& chain, const Rat& a, const Rat& b) {
  if (a >= b) return 0;
  return sign_variations(chain, a) - sign_variations(chain, b);
}

namespace {

void isolate_rec(const Poly& q, const std::vector<Poly>& chain, const Rat& a,
                 const Rat& b, std::vector<RootBracket>& out) {
  int c = count_roots(chain, a, b);  // q(b) != 0, so this counts (a, b)
  if (c == 0) return;
  if (c == 1) {
    RootBracket rb;
    rb.p = q;
    rb.lo = a;
    rb.hi = b;
    rb.sign_lo = sgn(q(a));
    rb.sign_hi = sgn(q(b));
    if (rb.sign_lo == rb.sign_hi)
      throw InternalError("isolated root without sign change");
    out.push_back(std::move(rb));
    return;
  }
  Rat m = (a + b) / 2;
  if (q(m) == 0) {
    // Split around the exact root m, keeping only m inside the gap.
    Rat e = (b - a) / 4;
    auto gap_bad = [&]() {
      return q(m - e) == 0 || q(m + e) == 0 ||
             count_roots(chain, m - e, m + e) > 1;
    };
    while (gap_bad()) e /= 2;
    isolate_rec(q, chain, a, m - e, out);
    RootBracket rb;
    rb.p = q;
    rb.lo = rb.hi = m;
    out.push_back(std::move(rb));
    isolate_rec(q, chain, m + e, b, out);
    return;
  }
  isolate_rec(q, chain, a, m, out);
  isolate_rec(q, chain, m, b, out);
}

}  // namespace

std::vector<RootBracket> isolate_roots(const Poly& p, const Rat& lo, const Rat& hi) {
  std::vector<RootBracket> out;
  if (p.is_zero()) throw InternalError("root isolation of zero polynomial");
  Poly q = squarefree_part(p);
  if (q.degree() == 0 || lo > hi) return out;
  // Deflate exact roots at the endpoints so the Sturm recursion sees
  // non-vanishing boundary values.
  bool root_lo = q(lo) == 0;
  bool root_hi = hi > lo && q(hi) == 0;
  Poly qq = q;
  if (root_lo) qq = divrem(qq, Poly({-lo, Rat(1)})).first;
  if (root_hi) qq = divrem(qq, Poly({-hi, Rat(1)})).first;
  if (root_lo) {
    RootBracket rb;
    rb.p = q;
    rb.lo = rb.hi = lo;
    out.push_back(std::move(rb));
  }
  if (lo < hi && qq.degree() > 0) {
    std::vector<Poly> chain = sturm_chain(qq);
    isolate_rec(qq, chain, lo, hi, out);
  }
  if (root_hi) {
    RootBracket rb;
    rb.p = q;
    rb.lo = rb.hi = hi;
    out.push_back(std::move(rb));
  }
  return out;
}

std::vector<RootBracket> isolate_all_roots(const Poly& p) {
  if (p.is_zero()) throw InternalError("root isolation of zero polynomial");
  if (p.degree() == 0) return {};
  Rat bound(1);
  for (int i = 0; i < p.degree(); ++i) {
    Rat a = abs(p.coeff(i) / p.leading());
    if (a > bound) bound = a;
  }
  bound += 1;
  return isolate_roots(p, -bound, bound);
}

void refine_bracket(RootBracket& rb, const Rat& width) {
  while (!rb.is_exact() && rb.hi - rb.lo > width) {
    Rat m = (rb.lo + rb.hi) / 2;
    int s = sgn(rb.p(m));
    if (s == 0) {
      rb.lo = rb.hi = m;
      rb.sign_lo = rb.sign_hi = 0;
      return;
    }
    if (s == rb.sign_lo)
      rb.lo = m;
    else
      rb.hi = m;
  }
}

int cmp_root_rat(const RootBracket& rb, const Rat& x) {
  if (rb.is_exact()) return rb.lo < x ? -1 : (rb.lo > x ? 1 : 0);
  if (x <= rb.lo) return 1;   // root lies in (lo, hi), so root > lo >= x
  if (x >= rb.hi) return -1;
  if (rb.p(x) == 0) return 0;  // the unique root in (lo, hi) is x itself
  // Root and x both in (lo, hi): root < x iff the sign has flipped by x.
  return sgn(rb.p(x)) == rb.sign_lo ? 1 : -1;
}

}  // namespace hambound
