#include "hambound/levenshtein.hpp"

namespace hambound {

std::string Conditions::first_failure() const {
  if (!l_s_range) return "l-s-range";
  if (!ell_condition) return "ell-condition";
  if (!ell_location) return "ell-location";
  if (!s_location) return "s-location";
  if (!s_condition) return "s-condition";
  if (!krein) return "strengthened-krein";
  return "";
}

std::string Conditions::first_gate_failure() const {
  if (!l_s_range) return "l-s-range";
  if (!s_location) return "s-location";
  if (!krein) return "strengthened-krein";
  return "";
}

namespace {

void validate_window(const Rat& ell, const Rat& s) {
  if (ell < -1 || ell >= 1) throw ParamError("ell must lie in [-1, 1)");
  if (s <= ell || s >= 1) throw ParamError("s must lie in (ell, 1)");
}

}  // namespace

std::vector<NodeVal> root_nodes_in(const Poly& p, const Rat& lo, const Rat& hi) {
  std::vector<NodeVal> out;
  if (p.degree() == 1) {
    Rat r = -p.coeff(0) / p.coeff(1);
    if (lo <= r && r <= hi) out.push_back(NodeVal::of(r));
    return out;
  }
  if (p.degree() == 2) {
    Rat a = p.coeff(2), b = p.coeff(1), c = p.coeff(0);
    Rat disc = b * b - 4 * a * c;
    if (disc >= 0) {
      Rat num = disc.get_num(), den = disc.get_den();
      if (mpz_perfect_square_p(num.get_num().get_mpz_t()) &&
          mpz_perfect_square_p(den.get_num().get_mpz_t())) {
        Int sn, sd;
        mpz_sqrt(sn.get_mpz_t(), num.get_num().get_mpz_t());
        mpz_sqrt(sd.get_mpz_t(), den.get_num().get_mpz_t());
        Rat sq = rat(sn, sd);
        Rat r1 = (-b - sq) / (2 * a), r2 = (-b + sq) / (2 * a);
        if (r1 > r2) std::swap(r1, r2);
        if (lo <= r1 && r1 <= hi) out.push_back(NodeVal::of(r1));
        if (r2 != r1 && lo <= r2 && r2 <= hi) out.push_back(NodeVal::of(r2));
        return out;
      }
    }
  }
  for (auto& rb : isolate_roots(p, lo, hi)) out.push_back(NodeVal::of(std::move(rb)));
  return out;
}

namespace {

std::vector<NodeVal> roots_in(const Poly& p, const Rat& lo, const Rat& hi) {
  return root_nodes_in(p, lo, hi);
}

}  // namespace

KreinResult krein_check(const HammingSpace& space, const Rat& ell, int k) {
  KreinResult res;
  OrthoFamily f1l = adjacent_1ell(space, ell, k);
  Poly tml = Poly({-ell, Rat(1)});
  for (int i = 0; i <= k; ++i) {
    for (int j = i; j <= k; ++j) {
      if (i == k && j == k) continue;
      Poly p = tml * f1l.Q[static_cast<std::size_t>(i)] *
               f1l.Q[static_cast<std::size_t>(j)];
      std::vector<Rat> c = to_krawtchouk(space, p);
      bool pos = true;
      for (const auto& x : c)
        if (x <= 0) {
          pos = false;
          break;
        }
      if (!pos) res.failures.emplace_back(i, j);
    }
  }
  res.ok = res.failures.empty();
  return res;
}

namespace {

Conditions check_conditions_impl(const HammingSpace& space, const Rat& ell,
                                 const Rat& s, int k,
                                 const bool* krein_known) {
  validate_window(ell, s);
  if (k < 1) throw ParamError("k must be >= 1");
  if (2 * k > space.n) throw ParamError("k must satisfy 2k <= n");
  Conditions cond;
  if (k + 1 > space.n - 1) return cond;  // Q_{k+1}^{1,0} does not exist

  OrthoFamily f10 = adjacent_10(space, k + 1);
  const Poly& Qk = f10.Q[static_cast<std::size_t>(k)];
  const Poly& Qk1 = f10.Q[static_cast<std::size_t>(k + 1)];
  const Poly& Qkm1 = f10.Q[static_cast<std::size_t>(k - 1)];

  std::vector<NodeVal> rk = roots_in(Qk, rat(-1), rat(1));
  std::vector<NodeVal> rk1 = roots_in(Qk1, rat(-1), rat(1));
  if (static_cast<int>(rk.size()) != k || static_cast<int>(rk1.size()) != k + 1)
    throw InternalError("adjacent polynomial has unexpected root count");

  // ell-location: t_{k+1,1}^{1,0} < ell < t_{k,1}^{1,0}, both strict.
  cond.ell_location = rk1.front().cmp(ell) < 0 && rk.front().cmp(ell) > 0;

  // ell-condition: Q_{k+1}^{1,0}(ell) / Q_k^{1,0}(ell) < 1.
  Rat qk_l = Qk(ell), qk1_l = Qk1(ell);
  cond.ell_condition = qk_l != 0 && qk1_l / qk_l < 1;

  // l-s-range: -1 <= ell < t_{k,1}^{1,0} and t_{k,k}^{1,0} < s <= 1.
  cond.l_s_range = rk.front().cmp(ell) > 0 && rk.back().cmp(s) < 0;

  try {
    OrthoFamily f1l = adjacent_1ell(space, ell, k);
    const Poly& Pk = f1l.Q[static_cast<std::size_t>(k)];
    const Poly& Pkm1 = f1l.Q[static_cast<std::size_t>(k - 1)];

    // s-location: t_{k,k}^{1,0} < s <= t_{k,k}^{1,ell} (right end closed;
    // the attaining families sit exactly at the endpoint).  When Q_k^{1,ell}
    // has no root in [-1, 1] the right end lies beyond 1 and any s < 1
    // passes it.
    std::vector<NodeVal> pk_roots = roots_in(Pk, rat(-1), rat(1));
    bool below_right_end = pk_roots.empty() || pk_roots.back().cmp(s) >= 0;
    cond.s_location = rk.back().cmp(s) < 0 && below_right_end;

    // s-condition:
    // Q_k^{1,ell}(s)/Q_{k-1}^{1,ell}(s) > Q_k^{1,ell}(ell)/Q_{k-1}^{1,ell}(ell).
    Rat ps = Pkm1(s), pl = Pkm1(ell);
    cond.s_condition = ps != 0 && pl != 0 && Pk(s) / ps > Pk(ell) / pl;
  } catch (const ParamError&) {
    // 1,ell family not constructible: both s flags stay false.
  }

  try {
    cond.krein = krein_known ? *krein_known : krein_check(space, ell, k).ok;
  } catch (const ParamError&) {
    cond.krein = false;
  }
  return cond;
}

}  // namespace

Conditions check_conditions(const HammingSpace& space, const Rat& ell,
                            const Rat& s, int k) {
  return check_conditions_impl(space, ell, s, k, nullptr);
}

Poly levenshtein_polynomial(const HammingSpace& space, const Rat& ell,
                            const Rat& s, int k) {
  validate_window(ell, s);
  if (k < 1) throw ParamError("k must be >= 1");
  if (2 * k > space.n) throw ParamError("k must satisfy 2k <= n");
  OrthoFamily f1ls = adjacent_1ells(space, ell, s, k);
  const Poly& u = f1ls.Q[static_cast<std::size_t>(k - 1)];
  return Poly({-ell, Rat(1)}) * Poly({-s, Rat(1)}) * u * u;
}

QuadratureRule quadrature(const HammingSpace& space, const Rat& ell,
                          const Rat& s, int k, long prec) {
  validate_window(ell, s);
  if (k < 1) throw ParamError("k must be >= 1");
  if (2 * k > space.n) throw ParamError("k must satisfy 2k <= n");

  QuadratureRule rule;
  rule.space = space;
  rule.ell = ell;
  rule.s = s;
  rule.k = k;

  OrthoFamily f1ls = adjacent_1ells(space, ell, s, k);
  const Poly& u = f1ls.Q[static_cast<std::size_t>(k - 1)];
  Poly m = u / u.leading();  // monic interior-node polynomial

  rule.nodes.push_back(NodeVal::of(ell));
  std::vector<NodeVal> interior = roots_in(m, ell, s);
  if (static_cast<int>(interior.size()) != k - 1)
    throw NoValidK("k=" + std::to_string(k) +
                   " inadmissible: interior quadrature nodes not all inside (ell, s)");
  for (auto& nd : interior) {
    if (nd.cmp(ell) <= 0 || nd.cmp(s) >= 0)
      throw NoValidK("k=" + std::to_string(k) +
                     " inadmissible: interior quadrature node at a window end");
    rule.nodes.push_back(std::move(nd));
  }
  rule.nodes.push_back(NodeVal::of(s));

  DiscreteMeasure mu = base_measure(space);
  Poly f = levenshtein_polynomial(space, ell, s, k);
  Rat f0 = integrate(f, mu);
  Rat f1 = f(Rat(1));
  if (f1 <= 0)
    throw NoValidK("k=" + std::to_string(k) +
                   " inadmissible: generating polynomial not positive at 1");

  // rho_{k+1} from the Lagrange basis at node 1 -- all factors rational.
  Poly tml = Poly({-ell, Rat(1)});
  Poly tms = Poly({-s, Rat(1)});
  Poly tm1 = Poly({Rat(-1), Rat(1)});
  rule.weight_at_one =
      integrate(m * tml * tms, mu) / (m(Rat(1)) * (1 - ell) * (1 - s));
  if (rule.weight_at_one * f1 != f0)
    throw InternalError("quadrature is not exact on the generating polynomial");

  // Endpoint weights: the interior product is the rational polynomial m.
  Rat rho0 =
      integrate(m * tms * tm1, mu) / (m(ell) * (ell - s) * (ell - 1));
  Rat rhok = integrate(m * tml * tm1, mu) / (m(s) * (s - ell) * (s - 1));

  Poly dm = derivative(m);
  Rat target = pow2(-prec);
  bool done = false;
  for (long p = prec, rounds = 0; rounds < 6 && !done; p *= 2, ++rounds) {
    Rat w = pow2(-p);
    rule.weights.clear();
    rule.weights_exact.clear();
    rule.weights.push_back(IV(rho0));
    rule.weights_exact.push_back(rho0);
    done = true;
    for (int i = 1; i < k; ++i) {
      NodeVal& nd = rule.nodes[static_cast<std::size_t>(i)];
      nd.refine(w);
      if (nd.is_exact()) {
        // Deflating an exact root keeps everything rational.
        Rat a = *nd.exact_value;
        Poly mi = divrem(m, Poly({-a, Rat(1)})).first;
        Rat rho = integrate(mi * tml * tms * tm1, mu) /
                  (mi(a) * (a - ell) * (a - s) * (a - 1));
        rule.weights.push_back(IV(rho));
        rule.weights_exact.push_back(rho);
        continue;
      }
      IV th = nd.iv();
      // Synthetic division by (t - theta) with interval root.
      const int d = m.degree();
      std::vector<IV> div(static_cast<std::size_t>(d), IV(Rat(0)));
      IV carry{Rat(0)};
      for (int j = d; j >= 1; --j) {
        carry = carry * th + IV(m.coeff(j));
        div[static_cast<std::size_t>(j - 1)] = carry;
      }
      IPoly numer = IPoly::from_coeffs(std::move(div)) *
                    IPoly::of(tml * tms * tm1);
      IV num = integrate(numer, mu);
      IV den = IPoly::of(dm)(th) * (th - IV(ell)) * (th - IV(s)) * (th - IV(Rat(1)));
      IV rho = num / den;
      if (rho.width() > target || !rho.certainly_positive()) {
        done = false;
        break;
      }
      rule.weights.push_back(rho);
      rule.weights_exact.push_back(std::nullopt);
    }
    if (done) {
      rule.weights.push_back(IV(rhok));
      rule.weights_exact.push_back(rhok);
    }
  }
  if (!done)
    throw NoValidK("k=" + std::to_string(k) +
                   " inadmissible: quadrature weights not certified positive");

  for (const auto& wi : rule.weights)
    if (!wi.certainly_positive())
      throw NoValidK("k=" + std::to_string(k) +
                     " inadmissible: quadrature weight not certified positive");
  if (rule.weight_at_one <= 0)
    throw NoValidK("k=" + std::to_string(k) +
                   " inadmissible: weight at t = 1 not positive");

  // Exactness on monomials up to degree 2k.
  for (int uu = 0; uu <= 2 * k; ++uu) {
    Rat lhs = moment(mu, static_cast<unsigned>(uu));
    IV rhs = IV(rule.weight_at_one);
    for (int i = 0; i <= k; ++i)
      rhs += rule.weights[static_cast<std::size_t>(i)] *
             ipow(rule.nodes[static_cast<std::size_t>(i)].iv(),
                  static_cast<unsigned>(uu));
    if (!rhs.contains(lhs))
      throw InternalError("quadrature exactness failed at degree " +
                          std::to_string(uu));
  }
  return rule;
}

namespace {

Rat explicit_display(const HammingSpace& space, const Rat& ell, const Rat& s,
                     int k) {
  OrthoFamily plain = krawtchouk_family(space, k + 1);
  OrthoFamily f10 = adjacent_10(space, k + 1);
  OrthoFamily f1l = adjacent_1ell(space, ell, k);
  auto S = [&](int j) { return S_partial(space, j); };
  Rat numer = S(k) * (f1l.Q[static_cast<std::size_t>(k - 1)](s) -
                      f1l.Q[static_cast<std::size_t>(k)](s));
  Rat termA =
      r_plain(space, k + 1) * plain.Q[static_cast<std::size_t>(k + 1)](ell) *
      f1l.Q[static_cast<std::size_t>(k - 1)](s) /
      (S(k + 1) * (f10.Q[static_cast<std::size_t>(k + 1)](ell) -
                   f10.Q[static_cast<std::size_t>(k)](ell)));
  Rat termB =
      r_plain(space, k) * plain.Q[static_cast<std::size_t>(k)](ell) *
      f1l.Q[static_cast<std::size_t>(k)](s) /
      (S(k - 1) * (f10.Q[static_cast<std::size_t>(k)](ell) -
                   f10.Q[static_cast<std::size_t>(k - 1)](ell)));
  return numer / (termA - termB);
}

}  // namespace

BoundReport cardinality_bound(const HammingSpace& space, const Rat& ell,
                              const Rat& s, int k, long prec) {
  BoundReport rep;
  rep.space = space;
  rep.ell = ell;
  rep.s = s;
  rep.k = k;
  try {
    rep.krein = krein_check(space, ell, k);
  } catch (const ParamError& e) {
    throw NoValidK("k=" + std::to_string(k) + " inadmissible: " + e.what());
  }
  bool krein_ok = rep.krein.ok;
  rep.cond = check_conditions_impl(space, ell, s, k, &krein_ok);
  if (!rep.cond.l_s_range || !rep.cond.s_location)
    throw NoValidK("k=" + std::to_string(k) + " inadmissible: " +
                   (rep.cond.l_s_range ? "s-location" : "l-s-range"));

  rep.f = levenshtein_polynomial(space, ell, s, k);
  rep.f_kraw = to_krawtchouk(space, rep.f);
  const Rat& f0 = rep.f_kraw[0];
  if (f0 <= 0)
    throw NoValidK("k=" + std::to_string(k) +
                   " inadmissible: f_0 not positive");
  if (krein_ok) {
    // The product condition proves strict positive-definiteness; a
    // nonpositive coefficient here would contradict it.
    for (std::size_t i = 0; i < rep.f_kraw.size(); ++i)
      if (rep.f_kraw[i] <= 0)
        throw InternalError("Krein condition passed but coefficient " +
                            std::to_string(i) + " of f_2k is not positive");
    rep.positivity_certificate = "krein";
  } else {
    for (std::size_t i = 1; i < rep.f_kraw.size(); ++i)
      if (rep.f_kraw[i] < 0)
        throw NoValidK("k=" + std::to_string(k) +
                       " inadmissible: strengthened-krein fails and "
                       "coefficient " +
                       std::to_string(i) + " of f_2k is negative");
    rep.positivity_certificate = "direct";
  }
  // f = (t-ell)(t-s) * square is pointwise <= 0 on [ell, s]; spot-check the
  // exact values on the grid anyway.
  for (int i = 0; i < space.n; ++i) {
    Rat t = space.grid_point(i);
    if (t >= ell && t <= s && rep.f(t) > 0)
      throw InternalError("f_2k positive at a grid point inside [ell, s]");
  }
  rep.L = rep.f(Rat(1)) / f0;
  rep.L_floor = floor_rat(rep.L);

  rep.rule = quadrature(space, ell, s, k, prec);
  if (Rat(1) / rep.rule.weight_at_one != rep.L)
    throw InternalError("1/rho_{k+1} disagrees with f(1)/f_0");

  try {
    rep.L_explicit = explicit_display(space, ell, s, k);
    rep.explicit_agrees = rep.L_explicit == rep.L;
  } catch (const std::exception&) {
    rep.explicit_agrees = false;  // degenerate display denominator
  }
  return rep;
}

KSelection select_k(const HammingSpace& space, const Rat& ell, const Rat& s,
                    int k_max, long prec) {
  KSelection sel;
  if (k_max < 1) k_max = space.n / 2;
  k_max = std::min(k_max, space.n / 2);
  for (int k = 1; k <= k_max; ++k) {
    try {
      BoundReport rep = cardinality_bound(space, ell, s, k, prec);
      sel.valid.push_back(k);
      if (!sel.report || rep.L < sel.report->L) {
        sel.best = k;
        sel.report = std::move(rep);
      }
    } catch (const NoValidK& e) {
      sel.rejected.emplace_back(k, e.what());
    } catch (const ParamError& e) {
      sel.rejected.emplace_back(k, e.what());
    }
  }
  return sel;
}

std::pair<Rat, Rat> ls_of_dD(const HammingSpace& space, long d, long D) {
  if (d < 1 || D < d || D > space.n)
    throw ParamError("need 1 <= d <= D <= n");
  return {space.t_of_distance(D), space.t_of_distance(d)};
}

std::pair<long, long> dD_of_ls(const HammingSpace& space, const Rat& ell,
                               const Rat& s) {
  int ie = space.grid_index(ell), is = space.grid_index(s);
  if (ie < 0 || is < 0 || ie >= space.n || is >= space.n)
    throw ParamError("ell and s must be grid points t_i = -1 + 2i/n, i < n");
  long D = space.n - ie, d = space.n - is;
  if (d < 1 || D < d) throw ParamError("need 1 <= d <= D <= n");
  return {d, D};
}

}  // namespace hambound
