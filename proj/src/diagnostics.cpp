#include "hambound/diagnostics.hpp"

#include <algorithm>

#include "hambound/measure.hpp"
#include "hambound/sturm.hpp"

namespace hambound {

namespace {

// Exact Gaussian elimination; throws InternalError on a singular matrix.
std::vector<Rat> solve_exact(std::vector<std::vector<Rat>> A,
                             std::vector<Rat> rhs) {
  const std::size_t m = A.size();
  for (std::size_t col = 0; col < m; ++col) {
    std::size_t piv = col;
    while (piv < m && A[piv][col] == 0) ++piv;
    if (piv == m) throw InternalError("singular moment system");
    std::swap(A[piv], A[col]);
    std::swap(rhs[piv], rhs[col]);
    for (std::size_t r = 0; r < m; ++r) {
      if (r == col || A[r][col] == 0) continue;
      Rat f = A[r][col] / A[col][col];
      for (std::size_t c = col; c < m; ++c) A[r][c] -= f * A[col][c];
      rhs[r] -= f * rhs[col];
    }
  }
  std::vector<Rat> x(m);
  for (std::size_t i = 0; i < m; ++i) x[i] = rhs[i] / A[i][i];
  return x;
}

// Interval Gaussian elimination; pivots must exclude zero.
std::optional<std::vector<IV>> solve_interval(std::vector<std::vector<IV>> A,
                                              std::vector<IV> rhs) {
  const std::size_t m = A.size();
  for (std::size_t col = 0; col < m; ++col) {
    std::size_t piv = m;
    Rat best;
    for (std::size_t r = col; r < m; ++r) {
      if (A[r][col].contains_zero()) continue;
      Rat mag = A[r][col].mid();
      if (mag < 0) mag = -mag;
      if (piv == m || mag > best) {
        piv = r;
        best = mag;
      }
    }
    if (piv == m) return std::nullopt;
    std::swap(A[piv], A[col]);
    std::swap(rhs[piv], rhs[col]);
    for (std::size_t r = 0; r < m; ++r) {
      if (r == col || (A[r][col].is_point() && A[r][col].lo == 0)) continue;
      IV f = A[r][col] / A[col][col];
      for (std::size_t c = col; c < m; ++c) A[r][c] -= f * A[col][c];
      rhs[r] -= f * rhs[col];
    }
  }
  std::vector<IV> x(m, IV(Rat(0)));
  for (std::size_t i = 0; i < m; ++i) x[i] = rhs[i] / A[i][i];
  return x;
}

bool is_nonneg_integer(const Rat& x) {
  return x >= 0 && x.get_den() == 1;
}

}  // namespace

std::vector<Rat> moments(const HammingSpace& space, int u_max) {
  DiscreteMeasure mu = base_measure(space);
  std::vector<Rat> b;
  b.reserve(static_cast<std::size_t>(u_max) + 1);
  for (int u = 0; u <= u_max; ++u)
    b.push_back(moment(mu, static_cast<unsigned>(u)));
  return b;
}

DistanceDistribution distance_distribution(const HammingSpace& space,
                                           const Rat& ell, const Rat& s, int k,
                                           long prec) {
  if (prec < 16) prec = 16;
  DistanceDistribution dd;
  dd.rep = cardinality_bound(space, ell, s, k, prec);
  dd.M = dd.rep.L;
  const QuadratureRule& rule = dd.rep.rule;

  bool all_exact = true;
  for (int i = 0; i <= k; ++i) {
    auto idx = static_cast<std::size_t>(i);
    if (rule.weights_exact[idx]) {
      Rat a = *rule.weights_exact[idx] * dd.M;
      dd.counts.push_back(IV(a));
      dd.counts_exact.push_back(a);
    } else {
      dd.counts.push_back(rule.weights[idx] * dd.M);
      dd.counts_exact.push_back(std::nullopt);
      all_exact = false;
    }
    dd.integral.push_back(dd.counts_exact.back() &&
                          is_nonneg_integer(*dd.counts_exact.back()));
    bool grid = false;
    for (int gi = 0; gi < space.n && !grid; ++gi)
      grid = rule.nodes[idx].cmp(space.grid_point(gi)) == 0;
    dd.on_grid.push_back(grid);
  }

  // Independent re-derivation from the moment system
  // 1 + sum_i A_i alpha_i^u = b_u M, u = 0..k.
  std::vector<Rat> b = moments(space, k);
  bool nodes_exact = true;
  for (const auto& nd : rule.nodes) nodes_exact = nodes_exact && nd.is_exact();
  if (all_exact && nodes_exact) {
    std::vector<std::vector<Rat>> A(static_cast<std::size_t>(k) + 1);
    std::vector<Rat> rhs(static_cast<std::size_t>(k) + 1);
    for (int u = 0; u <= k; ++u) {
      auto& row = A[static_cast<std::size_t>(u)];
      for (int i = 0; i <= k; ++i)
        row.push_back(pow_rat(*rule.nodes[static_cast<std::size_t>(i)].exact_value,
                              u));
      rhs[static_cast<std::size_t>(u)] = b[static_cast<std::size_t>(u)] * dd.M - 1;
    }
    std::vector<Rat> x = solve_exact(std::move(A), std::move(rhs));
    for (int i = 0; i <= k; ++i)
      if (x[static_cast<std::size_t>(i)] !=
          *dd.counts_exact[static_cast<std::size_t>(i)])
        throw InternalError("moment system disagrees with the quadrature weights");
    dd.notes.push_back("moment-system cross-check exact");
  } else {
    QuadratureRule r2 = rule;
    for (int round = 0;; ++round) {
      std::vector<std::vector<IV>> A(static_cast<std::size_t>(k) + 1);
      std::vector<IV> rhs(static_cast<std::size_t>(k) + 1);
      for (int u = 0; u <= k; ++u) {
        auto& row = A[static_cast<std::size_t>(u)];
        for (int i = 0; i <= k; ++i)
          row.push_back(ipow(r2.nodes[static_cast<std::size_t>(i)].iv(),
                             static_cast<unsigned>(u)));
        rhs[static_cast<std::size_t>(u)] =
            IV(b[static_cast<std::size_t>(u)] * dd.M - 1);
      }
      auto x = solve_interval(std::move(A), std::move(rhs));
      if (x) {
        for (int i = 0; i <= k; ++i) {
          auto idx = static_cast<std::size_t>(i);
          IV ai = r2.weights_exact[idx] ? IV(*r2.weights_exact[idx] * dd.M)
                                        : r2.weights[idx] * dd.M;
          if (!(*x)[idx].intersects(ai))
            throw InternalError(
                "moment system disagrees with the quadrature weights");
        }
        dd.notes.push_back("moment-system cross-check certified");
        break;
      }
      if (round == 2)
        throw InternalError("moment system could not be pivoted (singular?)");
      r2 = quadrature(space, ell, s, k, prec << (round + 1));
    }
  }

  dd.attainable_profile = dd.M.get_den() == 1;
  for (int i = 0; i <= k; ++i) {
    auto idx = static_cast<std::size_t>(i);
    dd.attainable_profile =
        dd.attainable_profile && dd.integral[idx] && dd.on_grid[idx];
  }
  return dd;
}

namespace {

TestFunctionValue test_function_at(const HammingSpace& space, int k, int j,
                                   const QuadratureRule& rule, const Rat& L,
                                   long prec) {
  if (j < 0 || j > space.n)
    throw ParamError("test-function degree must lie in [0, n]");
  TestFunctionValue tv;
  tv.j = j;

  OrthoFamily fam = krawtchouk_family(space, j);
  const Poly& Qj = fam.Q[static_cast<std::size_t>(j)];
  std::vector<Rat> b = moments(space, j);

  QuadratureRule r2 = rule;
  for (int round = 0;; ++round) {
    // Direct: 1/L + sum rho_i Q_j(alpha_i).
    IV direct(Rat(1) / L);
    for (int i = 0; i <= k; ++i) {
      auto idx = static_cast<std::size_t>(i);
      IV rho = r2.weights_exact[idx] ? IV(*r2.weights_exact[idx])
                                     : r2.weights[idx];
      direct += rho * Qj(r2.nodes[idx].iv());
    }
    // Power-sum: sum_{u=2k+1..j} a_{j,u} (S_u - b_u).
    IV psum(Rat(0));
    for (int u = 2 * k + 1; u <= j; ++u) {
      Rat aju = Qj.coeff(u);
      if (aju == 0) continue;
      IV Su(Rat(1) / L);
      for (int i = 0; i <= k; ++i) {
        auto idx = static_cast<std::size_t>(i);
        IV rho = r2.weights_exact[idx] ? IV(*r2.weights_exact[idx])
                                       : r2.weights[idx];
        Su += rho * ipow(r2.nodes[idx].iv(), static_cast<unsigned>(u));
      }
      psum += (Su - IV(b[static_cast<std::size_t>(u)])) * aju;
    }
    if (direct.intersects(psum)) {
      tv.direct = direct;
      tv.power_sum = psum;
      tv.value = intersect(direct, psum);
      return tv;
    }
    if (round == 2)
      throw InternalError("test-function formulas disagree at j = " +
                          std::to_string(j));
    r2 = quadrature(space, rule.ell, rule.s, k, prec << (round + 1));
  }
}

}  // namespace

TestFunctionValue test_function_R(const HammingSpace& space, const Rat& ell,
                                  const Rat& s, int k, int j, long prec) {
  if (prec < 16) prec = 16;
  BoundReport rep = cardinality_bound(space, ell, s, k, prec);
  return test_function_at(space, k, j, rep.rule, rep.L, prec);
}

TestFunctionValue test_function_S(const HammingSpace& space, const Rat& ell,
                                  int k, const Rat& M, int j, long prec) {
  if (prec < 16) prec = 16;
  SSolve sol = solve_cardinality_for_s(space, ell, k, M, prec);
  BoundReport rep = cardinality_bound(space, ell, sol.s, k, prec);
  // 1/M replaces 1/L; they agree exactly when the solve was exact.
  return test_function_at(space, k, j, rep.rule, M, prec);
}

TestFunctionReport scan_test_functions(const HammingSpace& space,
                                       const Rat& ell, const Rat& s, int k,
                                       int j_max, long prec) {
  if (prec < 16) prec = 16;
  TestFunctionReport rep;
  rep.space = space;
  rep.ell = ell;
  rep.s = s;
  rep.k = k;
  if (j_max > space.n) {
    rep.notes.push_back("scan ceiling capped at n = " + std::to_string(space.n));
    j_max = space.n;
  }
  rep.j_max = j_max;

  BoundReport bound = cardinality_bound(space, ell, s, k, prec);
  const Rat tiny = pow2(-prec);
  for (int j = 1; j <= j_max; ++j) {
    TestFunctionValue tv =
        test_function_at(space, k, j, bound.rule, bound.L, prec);
    if (tv.value.certainly_negative()) {
      if (!rep.first_negative) rep.first_negative = j;
    } else if (tv.value.contains_zero() && j > 2 * k &&
               tv.value.width() > tiny) {
      rep.indeterminate.push_back(j);
    }
    rep.values.push_back(std::move(tv));
  }
  return rep;
}

ImprovingPolynomial improving_polynomial(const HammingSpace& space,
                                         const Rat& ell, const Rat& s, int k,
                                         int j, long prec) {
  if (prec < 16) prec = 16;
  if (j <= 2 * k) throw ParamError("improving degree must exceed 2k");
  BoundReport rep = cardinality_bound(space, ell, s, k, prec);
  TestFunctionValue R = test_function_at(space, k, j, rep.rule, rep.L, prec);
  if (!R.value.certainly_negative())
    throw ParamError("R_j is not certified negative at j = " + std::to_string(j));

  OrthoFamily fam = krawtchouk_family(space, j);
  const Poly& Qj = fam.Q[static_cast<std::size_t>(j)];
  auto [a, bpoly] = divrem(Qj, rep.f);

  // Certified upper bound on -min a over [ell, s]: endpoints plus critical
  // points of a, the latter enclosed by refined root brackets.
  Rat min_lo = std::min(a(ell), a(s));
  if (a.degree() >= 2) {
    Poly ap = derivative(a);
    for (RootBracket& rb : isolate_roots(ap, ell, s)) {
      refine_bracket(rb, pow2(-(prec + 8)));
      IV av = a(rb.iv());
      if (av.lo < min_lo) min_lo = av.lo;
    }
  }
  Rat c = -min_lo;
  const std::vector<Rat> bk = to_krawtchouk(space, bpoly);
  for (std::size_t i = 0; i < bk.size() && i < rep.f_kraw.size(); ++i) {
    if (i == 0) continue;
    Rat cand = bk[i] / rep.f_kraw[i];
    if (cand > c) c = cand;
  }
  if (c < 0) c = Rat(0);

  ImprovingPolynomial ip;
  ip.j = j;
  ip.c = c;
  ip.original = rep.L;
  ip.v = (a + Poly(c)) * rep.f;
  ip.v_kraw = to_krawtchouk(space, ip.v);
  for (std::size_t i = 1; i < ip.v_kraw.size(); ++i)
    if (ip.v_kraw[i] < 0)
      throw InternalError("improving polynomial left the nonnegative cone at " +
                          std::to_string(i));
  for (int gi = 0; gi < space.n; ++gi) {
    Rat t = space.grid_point(gi);
    if (t < ell || t > s) continue;
    if (ip.v(t) > 0)
      throw InternalError("improving polynomial positive inside [ell, s]");
  }
  ip.v0 = ip.v_kraw.empty() ? Rat(0) : ip.v_kraw[0];
  ip.v1 = ip.v(rat(1));
  if (ip.v0 <= 0) throw InternalError("improving polynomial has v_0 <= 0");
  ip.improved = ip.v1 / ip.v0;
  if (ip.improved >= rep.L)
    throw InternalError("improving polynomial failed to improve the bound");
  return ip;
}

RefineReport refine_polynomials(const HammingSpace& space, const Rat& ell,
                                const Rat& s, int k, const Potential& h,
                                long prec) {
  if (prec < 16) prec = 16;
  RefineReport rr;
  rr.rep = cardinality_bound(space, ell, s, k, prec);
  const Rat M = rr.rep.L;

  // Grid point immediately below s (always exists: t_0 = -1 < s).
  Rat tstar = rat(-1);
  for (int gi = 0; gi < space.n; ++gi) {
    Rat t = space.grid_point(gi);
    if (t < s && t > tstar) tstar = t;
  }

  std::vector<Rat> gammas;  // the f_ref roots, for the selected combination
  if (k == 1) {
    rr.refined = false;
    rr.f_ref = rr.rep.f;
    rr.f_kraw = rr.rep.f_kraw;
    rr.notes.push_back("k = 1: no interior nodes, refinement is the identity");
    gammas = {ell, s};
  } else {
    // Snap each interior double node to a pair of neighbouring grid points.
    std::vector<std::vector<std::pair<Rat, Rat>>> choices;
    bool any_alt = false;
    for (int i = 1; i < k; ++i) {
      const NodeVal& al = rr.rep.rule.nodes[static_cast<std::size_t>(i)];
      int eq = -1, below = -1;
      for (int gi = 0; gi < space.n; ++gi) {
        int cmp = al.cmp(space.grid_point(gi));
        if (cmp == 0) eq = gi;
        if (cmp > 0) below = gi;  // grid point < alpha_i
      }
      std::vector<std::pair<Rat, Rat>> opts;
      if (eq >= 0) {
        any_alt = true;
        if (eq > 0)
          opts.push_back({space.grid_point(eq - 1), space.grid_point(eq)});
        if (eq + 1 < space.n)
          opts.push_back({space.grid_point(eq), space.grid_point(eq + 1)});
      } else {
        if (below < 0 || below + 1 >= space.n)
          throw InternalError("interior node fell off the grid");
        opts.push_back({space.grid_point(below), space.grid_point(below + 1)});
      }
      choices.push_back(std::move(opts));
    }
    rr.alt_nodes_used = any_alt;

    // Enumerate the (few) neighbour-pair combinations; keep the best.
    std::vector<std::size_t> pick(choices.size(), 0);
    bool have_best = false;
    while (true) {
      std::vector<Rat> g{ell};
      for (std::size_t i = 0; i < choices.size(); ++i) {
        g.push_back(choices[i][pick[i]].first);
        g.push_back(choices[i][pick[i]].second);
      }
      g.push_back(s);
      Poly f = from_roots(g);
      std::vector<Rat> fk = to_krawtchouk(space, f);
      std::optional<int> viol;
      for (std::size_t i = 1; i + 1 < fk.size(); ++i)
        if (fk[i] < 0) {
          viol = static_cast<int>(i);
          break;
        }
      bool grid_ok = true;
      for (int gi = 0; gi < space.n && grid_ok; ++gi) {
        Rat t = space.grid_point(gi);
        if (t >= ell && t <= s) grid_ok = f(t) <= 0;
      }
      Rat f0 = fk.empty() ? Rat(0) : fk[0];
      bool feas = !viol && f0 > 0 && f(rat(1)) > 0;
      std::optional<Rat> Lr;
      if (feas) Lr = f(rat(1)) / f0;

      bool better = !have_best;
      if (!better) {
        bool cur_ok = rr.f_feasible && rr.f_grid_ok;
        bool new_ok = feas && grid_ok;
        if (new_ok != cur_ok)
          better = new_ok;
        else if (new_ok && Lr && rr.L_ref)
          better = *Lr < *rr.L_ref;
      }
      if (better) {
        have_best = true;
        rr.f_ref = f;
        rr.f_kraw = fk;
        rr.f_violation = viol;
        rr.f_feasible = feas;
        rr.f_grid_ok = grid_ok;
        rr.L_ref = Lr;
        gammas = g;
      }
      // advance the mixed-radix counter
      std::size_t pos = 0;
      while (pos < pick.size() && ++pick[pos] == choices[pos].size()) {
        pick[pos] = 0;
        ++pos;
      }
      if (pos == pick.size()) break;
      if (pick.empty()) break;
    }
    rr.refined = true;
  }

  if (k == 1) {
    rr.f_violation = std::nullopt;
    rr.f_feasible = true;
    rr.f_grid_ok = true;
    for (int gi = 0; gi < space.n && rr.f_grid_ok; ++gi) {
      Rat t = space.grid_point(gi);
      if (t >= ell && t <= s) rr.f_grid_ok = rr.f_ref(t) <= 0;
    }
    rr.L_ref = rr.rep.L;
  }

  // Energy side: g_ref = H(f_ref (t - tstar); h), all nodes simple unless
  // tstar collides with a gamma.
  try {
    if (h.kind == PotentialKind::table && !h.monotone_attested)
      throw ParamError(
          "table potential lacks the absolute-monotonicity attestation "
          "required for energy bounds");
    std::vector<Rat> all = gammas;
    all.push_back(tstar);
    std::sort(all.begin(), all.end());
    std::vector<HermiteNode> hn;
    for (const Rat& g : all) {
      if (!hn.empty() && hn.back().z.is_exact() &&
          *hn.back().z.exact_value == g) {
        ++hn.back().mult;
      } else {
        hn.push_back({NodeVal::of(g), 1});
      }
    }
    IPoly gref = hermite_interpolant(hn, h, prec);
    rr.g_built = true;

    OrthoFamily fam = krawtchouk_family(
        space, std::max(gref.degree(), 0));
    bool feas = true;
    for (int i = 1; i <= gref.degree(); ++i) {
      IV gi = integrate(gref * IPoly::of(fam.Q[static_cast<std::size_t>(i)]),
                        fam.mu) *
              r_plain(space, i);
      if (!gi.certainly_nonneg()) {
        feas = false;
        if (gi.certainly_negative() && !rr.g_violation) rr.g_violation = i;
        if (!gi.certainly_negative())
          rr.notes.push_back("g_ref coefficient " + std::to_string(i) +
                             " has undecided sign");
        break;
      }
    }
    rr.g_feasible = feas;
    rr.g_grid_ok = true;
    for (int gi = 0; gi < space.n && rr.g_grid_ok; ++gi) {
      Rat t = space.grid_point(gi);
      if (t < ell) continue;
      IV gv = gref(t);
      IV hv = h.value(t, prec);
      if (gv.lo > hv.hi) rr.g_grid_ok = false;
    }
    DiscreteMeasure mu = base_measure(space);
    IV g0 = integrate(gref, mu);
    IV g1 = gref(rat(1));
    rr.energy_ref = (g0 * M - g1) * M;
  } catch (const ParamError& e) {
    rr.notes.push_back(std::string("energy refinement skipped: ") + e.what());
  }

  return rr;
}

}  // namespace hambound
