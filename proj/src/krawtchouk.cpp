#include "hambound/krawtchouk.hpp"

namespace hambound {

DiscreteMeasure base_measure(const HammingSpace& space) {
  DiscreteMeasure mu;
  const int n = space.n;
  Rat qn(space.cardinality());
  for (int i = 0; i <= n; ++i) {
    Rat w = r_plain(space, n - i) / qn;
    mu.atoms.emplace_back(space.grid_point(i), w);
  }
  return mu;
}

DiscreteMeasure signed_measure(const HammingSpace& space, MeasureKind kind,
                               const Rat& ell, const Rat& s) {
  const long n = space.n, q = space.q;
  DiscreteMeasure base = base_measure(space);
  if (kind == MeasureKind::base) return base;

  Poly t = Poly::t();
  Poly one = Poly::one();
  Poly factor;
  Rat c;
  switch (kind) {
    case MeasureKind::one_zero:
      factor = one - t;
      c = rat(q, 2 * (q - 1));
      break;
    case MeasureKind::one_one: {
      if (n < 2) throw ParamError("second adjacent measure needs n >= 2");
      factor = (one - t) * (one + t);
      c = rat(n * q * q, 4 * (n - 1) * (q - 1));
      break;
    }
    case MeasureKind::one_ell: {
      factor = (t - Poly(ell)) * (one - t);
      Rat den = Rat(2 * (q - 1)) * (Rat(2 * (n - 1)) - Rat(n * q) * (1 + ell));
      if (den == 0) throw ParamError("degenerate normalization for the ell measure");
      c = Rat(n * q * q) / den;
      break;
    }
    case MeasureKind::one_s: {
      factor = (Poly(s) - t) * (one - t);
      Rat den = Rat(2 * (q - 1)) * (Rat(n * q) * (1 + s) - Rat(2 * (n - 1)));
      if (den == 0) throw ParamError("degenerate normalization for the s measure");
      c = Rat(n * q * q) / den;
      break;
    }
    case MeasureKind::one_ell_s: {
      factor = (t - Poly(ell)) * (Poly(s) - t) * (one - t);
      Rat d1 = (Rat(2) + ell + s) / 2;
      Rat d2 = (1 + ell) * (1 + s);
      Rat bracket = Rat(4 * (n - 1)) * (Rat(n * q) * d1 - Rat(n + q - 2)) -
                    Rat(n * n * q * q) * d2;
      Rat den = Rat(2 * (q - 1)) * bracket;
      if (den == 0) throw ParamError("degenerate normalization for the ell,s measure");
      c = Rat(n * n) * Rat(q) * Rat(q) * Rat(q) / den;
      break;
    }
    default:
      throw InternalError("unhandled measure kind");
  }

  DiscreteMeasure mu;
  for (const auto& [x, w] : base.atoms) {
    Rat m = c * factor(x) * w;
    if (m != 0) mu.atoms.emplace_back(x, m);
  }
  if (mu.total_mass() != 1)
    throw InternalError("signed measure does not normalize to 1");
  return mu;
}

Rat r_plain(const HammingSpace& space, int i) {
  if (i < 0 || i > space.n) return Rat(0);
  return Rat(pow_rat(Rat(space.q - 1), i)) * Rat(binomial(space.n, i));
}

Rat S_partial(const HammingSpace& space, int j) {
  Rat s(0);
  for (int i = 0; i <= j; ++i) s += r_plain(space, i);
  return s;
}

Rat r10_norm(const HammingSpace& space, int j) {
  Rat S = S_partial(space, j);
  Rat den = Rat(binomial(space.n - 1, j)) * pow_rat(Rat(space.q - 1), j);
  if (den == 0) throw ParamError("first adjacent norm undefined at this degree");
  return S * S / den;
}

Rat r11_norm(const HammingSpace& space, int j) {
  Rat S(0);
  for (int u = 0; u <= j; ++u)
    S += Rat(binomial(space.n - 1, u)) * pow_rat(Rat(space.q - 1), u);
  Rat den = Rat(binomial(space.n - 2, j)) * pow_rat(Rat(space.q - 1), j);
  if (den == 0) throw ParamError("second adjacent norm undefined at this degree");
  return S * S / den;
}

OrthoFamily krawtchouk_family(const HammingSpace& space, int max_deg) {
  if (max_deg < 0 || max_deg > space.n)
    throw ParamError("Krawtchouk degree out of range [0, n]");
  const long n = space.n, q = space.q;
  OrthoFamily fam;
  fam.space = space;
  fam.mu = base_measure(space);
  fam.Q.push_back(Poly::one());
  if (max_deg >= 1)
    fam.Q.push_back(Poly({rat(q - 2, 2 * (q - 1)), rat(q, 2 * (q - 1))}));
  for (int i = 1; i < max_deg; ++i) {
    Rat a = rat(-(q - 2) * (n - 2 * i), q * n);
    Rat b = rat(2 * (q - 1) * (n - i), q * n);
    Rat c = rat(2 * i, q * n);
    Poly next = ((Poly::t() - Poly(a)) * fam.Q[static_cast<std::size_t>(i)] -
                 c * fam.Q[static_cast<std::size_t>(i - 1)]) /
                b;
    fam.Q.push_back(std::move(next));
  }
  for (int i = 0; i <= max_deg; ++i) fam.norm.push_back(r_plain(space, i));
  fam.cross_checked = true;
  return fam;
}

Poly krawtchouk_in_z(const HammingSpace& space, int i) {
  // K_i(z) = sum_j (-1)^j (q-1)^{i-j} C(z, j) C(n-z, i-j)
  const long n = space.n, q = space.q;
  Poly z = Poly::t();
  Poly acc = Poly::zero();
  for (int j = 0; j <= i; ++j) {
    Poly cz = Poly::one();
    for (int u = 0; u < j; ++u) cz = cz * (z - Poly(Rat(u)));
    cz = cz / Rat(factorial(j));
    Poly cnz = Poly::one();
    for (int u = 0; u < i - j; ++u) cnz = cnz * (Poly(Rat(n - u)) - z);
    cnz = cnz / Rat(factorial(i - j));
    Rat coef = pow_rat(Rat(q - 1), i - j) * (j % 2 == 0 ? 1 : -1);
    acc = acc + coef * (cz * cnz);
  }
  return acc;
}

Poly kernel_poly(const OrthoFamily& fam, int i, const Rat& y) {
  if (i < 0 || i >= static_cast<int>(fam.Q.size()) ||
      i >= static_cast<int>(fam.norm.size()))
    throw InternalError("kernel degree beyond available family");
  Poly acc = Poly::zero();
  for (int j = 0; j <= i; ++j) {
    const Rat& nj = fam.norm[static_cast<std::size_t>(j)];
    if (nj == 0) throw InternalError("kernel uses an undefined norm");
    acc = acc + nj * fam.Q[static_cast<std::size_t>(j)](y) *
                    fam.Q[static_cast<std::size_t>(j)];
  }
  return acc;
}

OrthoFamily adjacent_10(const HammingSpace& space, int max_deg) {
  if (max_deg > space.n - 1)
    throw ParamError("first adjacent family exists up to degree n-1");
  OrthoFamily plain = krawtchouk_family(space, max_deg);
  OrthoFamily fam;
  fam.space = space;
  fam.mu = signed_measure(space, MeasureKind::one_zero);
  Poly acc = Poly::zero();
  for (int i = 0; i <= max_deg; ++i) {
    acc = acc + r_plain(space, i) * plain.Q[static_cast<std::size_t>(i)];
    fam.Q.push_back(acc / S_partial(space, i));
    fam.norm.push_back(r10_norm(space, i));
  }
  fam.cross_checked = true;
  return fam;
}

OrthoFamily adjacent_11(const HammingSpace& space, int max_deg) {
  if (max_deg > space.n - 2)
    throw ParamError("second adjacent family exists up to degree n-2");
  OrthoFamily f10 = adjacent_10(space, max_deg + 1);
  OrthoFamily fam;
  fam.space = space;
  fam.mu = signed_measure(space, MeasureKind::one_one);
  for (int i = 0; i <= max_deg; ++i) {
    Poly numer = kernel_poly(f10, i, Rat(-1));
    Rat den = numer(Rat(1));
    if (den == 0) throw ParamError("degenerate kernel ratio for the 1,1 family");
    fam.Q.push_back(numer / den);
    fam.norm.push_back(r11_norm(space, i));
  }
  fam.cross_checked = true;
  return fam;
}

namespace {

// Monic orthogonal sequence via Gram-Schmidt against a (possibly signed)
// measure; returns false when a zero norm blocks the construction.
bool gram_schmidt(const DiscreteMeasure& mu, int up_to, std::vector<Poly>& out) {
  out.clear();
  std::vector<Rat> sqnorm;
  for (int i = 0; i <= up_to; ++i) {
    Poly p = Poly::from_coeffs([&] {
      std::vector<Rat> c(static_cast<std::size_t>(i) + 1, Rat(0));
      c.back() = 1;
      return c;
    }());
    for (int j = 0; j < i; ++j) {
      Rat proj = integrate(p * out[static_cast<std::size_t>(j)], mu) /
                 sqnorm[static_cast<std::size_t>(j)];
      p = p - proj * out[static_cast<std::size_t>(j)];
    }
    Rat ns = integrate(p * p, mu);
    if (i < up_to && ns == 0) return false;
    out.push_back(std::move(p));
    sqnorm.push_back(ns);
  }
  return true;
}

}  // namespace

OrthoFamily adjacent_1ell(const HammingSpace& space, const Rat& ell, int k) {
  OrthoFamily f10 = adjacent_10(space, k);
  OrthoFamily fam;
  fam.space = space;
  fam.mu = signed_measure(space, MeasureKind::one_ell, ell);
  for (int i = 0; i <= k; ++i) {
    Poly numer = kernel_poly(f10, i, ell);
    Rat den = numer(Rat(1));
    if (den == 0)
      throw ParamError("degenerate kernel ratio for the 1,ell family");
    fam.Q.push_back(numer / den);
    Rat ns = integrate(fam.Q.back() * fam.Q.back(), fam.mu);
    fam.norm.push_back(ns == 0 ? Rat(0) : Rat(1) / ns);
  }

  // Cross-check against direct orthogonalization where the measure allows.
  std::vector<Poly> gs;
  if (gram_schmidt(fam.mu, k, gs)) {
    fam.cross_checked = true;
    for (int i = 0; i <= k; ++i) {
      Rat at1 = gs[static_cast<std::size_t>(i)](Rat(1));
      if (at1 == 0) {
        fam.cross_checked = false;
        break;
      }
      if (!(gs[static_cast<std::size_t>(i)] / at1 ==
            fam.Q[static_cast<std::size_t>(i)]))
        throw InternalError("1,ell family: kernel ratio and Gram-Schmidt disagree");
    }
  }
  return fam;
}

OrthoFamily adjacent_1ells(const HammingSpace& space, const Rat& ell,
                           const Rat& s, int k) {
  if (k < 1) throw ParamError("the 1,ell,s family needs k >= 1");
  OrthoFamily f1l = adjacent_1ell(space, ell, k - 1);
  OrthoFamily fam;
  fam.space = space;
  for (int i = 0; i < k; ++i) {
    Poly numer = kernel_poly(f1l, i, s);
    Rat den = numer(Rat(1));
    if (den == 0)
      throw ParamError("degenerate kernel ratio for the 1,ell,s family");
    fam.Q.push_back(numer / den);
  }
  // The measure (and with it the norms) exists only when its normalization
  // is nonzero; k = 1 never touches it downstream.
  try {
    fam.mu = signed_measure(space, MeasureKind::one_ell_s, ell, s);
    for (int i = 0; i < k; ++i) {
      Rat ns = integrate(fam.Q[static_cast<std::size_t>(i)] *
                             fam.Q[static_cast<std::size_t>(i)],
                         fam.mu);
      fam.norm.push_back(ns == 0 ? Rat(0) : Rat(1) / ns);
    }
  } catch (const ParamError&) {
    if (k > 1) throw;
  }
  return fam;
}

namespace {

// q(t) / (t - root) for monic q, with an interval enclosure of the root.
IPoly deflate(const Poly& q, const IV& root) {
  const int d = q.degree();
  std::vector<IV> out(static_cast<std::size_t>(d), IV(Rat(0)));
  IV carry{Rat(0)};
  for (int i = d; i >= 1; --i) {
    carry = carry * root + IV(q.coeff(i));
    out[static_cast<std::size_t>(i - 1)] = carry;
  }
  return IPoly::from_coeffs(std::move(out));
}

}  // namespace

RadauRule10 radau_rule_10(const HammingSpace& space, int k, long prec) {
  if (k < 1) throw ParamError("quadrature needs k >= 1");
  OrthoFamily f10 = adjacent_10(space, k);
  const Poly& Qk = f10.Q[static_cast<std::size_t>(k)];
  Poly monic = Qk / Qk.leading();
  DiscreteMeasure mu = base_measure(space);

  RadauRule10 rule;
  rule.k = k;
  rule.nodes = isolate_roots(monic, rat(-1), rat(1));
  if (static_cast<int>(rule.nodes.size()) != k)
    throw InternalError("adjacent polynomial does not have k roots in (-1, 1)");
  rule.weight_at_one = integrate(monic, mu) / monic(Rat(1));

  Poly dmonic = derivative(monic);
  Rat target = pow2(-prec);
  for (long p = prec, rounds = 0; rounds < 6; p *= 2, ++rounds) {
    Rat w = pow2(-p);
    rule.weights.clear();
    bool ok = true;
    for (auto& nd : rule.nodes) {
      refine_bracket(nd, w);
      IV th = nd.iv();
      IPoly numer = deflate(monic, th) * IPoly::of(Poly({Rat(-1), Rat(1)}));
      IV num = integrate(numer, mu);
      IV den = IPoly::of(dmonic)(th) * (th - IV(Rat(1)));
      IV wi = num / den;
      if (wi.width() > target || !wi.certainly_positive()) {
        ok = false;
        break;
      }
      rule.weights.push_back(wi);
    }
    if (ok) break;
  }
  if (static_cast<int>(rule.weights.size()) != k)
    throw InternalError("could not certify positive quadrature weights");

  // Exactness spot check on monomials up to degree 2k.
  Poly tp = Poly::one();
  for (int u = 0; u <= 2 * k; ++u) {
    Rat lhs = integrate(tp, mu);
    IV rhs = IV(rule.weight_at_one * tp(Rat(1)));
    for (int i = 0; i < k; ++i)
      rhs += rule.weights[static_cast<std::size_t>(i)] *
             IPoly::of(tp)(rule.nodes[static_cast<std::size_t>(i)].iv());
    if (!rhs.contains(lhs))
      throw InternalError("quadrature exactness check failed at degree " + std::to_string(u));
    tp = tp * Poly::t();
  }
  return rule;
}

std::vector<Rat> to_krawtchouk(const HammingSpace& space, const Poly& f) {
  if (f.degree() > space.n)
    throw ParamError("Krawtchouk expansion needs degree <= n");
  int d = std::max(f.degree(), 0);
  OrthoFamily fam = krawtchouk_family(space, d);
  std::vector<Rat> out(static_cast<std::size_t>(d) + 1);
  for (int i = 0; i <= d; ++i)
    out[static_cast<std::size_t>(i)] =
        r_plain(space, i) *
        integrate(f * fam.Q[static_cast<std::size_t>(i)], fam.mu);
  return out;
}

Poly from_krawtchouk(const HammingSpace& space, const std::vector<Rat>& coeffs) {
  if (static_cast<int>(coeffs.size()) > space.n + 1)
    throw ParamError("too many Krawtchouk coefficients for this n");
  OrthoFamily fam = krawtchouk_family(space, static_cast<int>(coeffs.size()) - 1);
  Poly acc = Poly::zero();
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    acc = acc + coeffs[i] * fam.Q[i];
  return acc;
}

}  // namespace hambound
