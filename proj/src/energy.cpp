#include "hambound/energy.hpp"

#include <algorithm>
#include <cstdio>
#include <utility>

#include "hambound/base.hpp"
#include "hambound/measure.hpp"

namespace hambound {

IV potential_on(const Potential& h, const NodeVal& z, int j, long prec) {
  if (z.is_exact()) return h.derivative(*z.exact_value, j, prec);
  IV x = z.iv();
  // h^(j) is nondecreasing (h^(j+1) >= 0), so endpoint values bracket it.
  IV a = h.derivative(x.lo, j, prec);
  IV b = h.derivative(x.hi, j, prec);
  return IV(a.lo, b.hi);
}

IPoly hermite_interpolant(const std::vector<HermiteNode>& nodes,
                          const Potential& h, long prec) {
  if (nodes.empty()) throw InternalError("no interpolation nodes");
  int total = 0, maxmult = 0;
  for (const auto& nd : nodes) {
    if (nd.mult < 1) throw InternalError("node multiplicity must be >= 1");
    total += nd.mult;
    maxmult = std::max(maxmult, nd.mult);
  }
  if (maxmult > 1 && !h.has_derivatives())
    throw ParamError("repeated interpolation nodes need potential derivatives");

  std::vector<NodeVal> zs;
  zs.reserve(nodes.size());
  Rat w = pow2(-(prec + 16));
  for (const auto& nd : nodes) {
    NodeVal z = nd.z;
    z.refine(w);
    zs.push_back(std::move(z));
  }

  std::vector<int> slot;  // expanded position -> node index
  slot.reserve(static_cast<std::size_t>(total));
  for (std::size_t i = 0; i < nodes.size(); ++i)
    for (int r = 0; r < nodes[i].mult; ++r) slot.push_back(static_cast<int>(i));
  const int m = total;

  std::vector<Rat> fact(static_cast<std::size_t>(maxmult), Rat(1));
  for (int r = 1; r < maxmult; ++r)
    fact[static_cast<std::size_t>(r)] = fact[static_cast<std::size_t>(r - 1)] * r;

  // Divided differences over slot ranges; same-node ranges take the
  // derivative value h^(len)(z)/len!.
  std::vector<std::vector<IV>> dd(
      static_cast<std::size_t>(m),
      std::vector<IV>(static_cast<std::size_t>(m), IV(Rat(0))));
  for (int len = 0; len < m; ++len) {
    for (int i = 0; i + len < m; ++i) {
      int j = i + len;
      auto& cell = dd[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      if (slot[static_cast<std::size_t>(i)] == slot[static_cast<std::size_t>(j)]) {
        cell = potential_on(h, zs[static_cast<std::size_t>(
                                   slot[static_cast<std::size_t>(i)])],
                            len, prec) /
               fact[static_cast<std::size_t>(len)];
      } else {
        IV den = zs[static_cast<std::size_t>(slot[static_cast<std::size_t>(j)])].iv() -
                 zs[static_cast<std::size_t>(slot[static_cast<std::size_t>(i)])].iv();
        cell = (dd[static_cast<std::size_t>(i + 1)][static_cast<std::size_t>(j)] -
                dd[static_cast<std::size_t>(i)][static_cast<std::size_t>(j - 1)]) /
               den;
      }
    }
  }

  IPoly g = IPoly::from_coeffs({});
  IPoly basis = IPoly::of(Poly::one());
  for (int p = 0; p < m; ++p) {
    g = g + basis * dd[0][static_cast<std::size_t>(p)];
    if (p + 1 < m) {
      IV z = zs[static_cast<std::size_t>(slot[static_cast<std::size_t>(p)])].iv();
      basis = basis * IPoly::from_coeffs({IV(Rat(0)) - z, IV(Rat(1))});
    }
  }
  return g;
}

namespace {

std::string approx(const Rat& x) {
  double v = x.get_d();
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::vector<IV> ikraw(const HammingSpace& space, const IPoly& g) {
  int d = g.degree();
  if (d < 0) return {};
  OrthoFamily fam = krawtchouk_family(space, d);
  std::vector<IV> out;
  out.reserve(static_cast<std::size_t>(d) + 1);
  for (int i = 0; i <= d; ++i)
    out.push_back(integrate(g * IPoly::of(fam.Q[static_cast<std::size_t>(i)]),
                            fam.mu) *
                  r_plain(space, i));
  return out;
}

std::vector<Rat> grid_samples(const HammingSpace& space, const Rat& lo,
                              const Rat& hi, bool include_hi, bool midpoints) {
  std::vector<Rat> pts;
  for (int i = 0; i < space.n; ++i) {
    Rat t = space.grid_point(i);
    if (t >= lo && (include_hi ? t <= hi : t < hi)) pts.push_back(t);
  }
  if (midpoints) {
    std::vector<Rat> mids;
    if (!pts.empty() && lo < pts.front()) mids.push_back((lo + pts.front()) / 2);
    for (std::size_t i = 0; i + 1 < pts.size(); ++i)
      mids.push_back((pts[i] + pts[i + 1]) / 2);
    if (!pts.empty() && pts.back() < hi) mids.push_back((pts.back() + hi) / 2);
    pts.insert(pts.end(), mids.begin(), mids.end());
    std::sort(pts.begin(), pts.end());
  }
  return pts;
}

// No certified violation of g <= h on [lo, 1).
void verify_below(const HammingSpace& space, const IPoly& g, const Potential& h,
                  const Rat& lo, long prec) {
  bool grid_only = h.kind == PotentialKind::table;
  for (const Rat& t : grid_samples(space, lo, rat(1), false, !grid_only)) {
    IV gv = g(t);
    IV hv = h.value(t, prec);
    if (gv.lo > hv.hi) {
      std::string msg = "interpolant exceeds the potential at t = " + rat_to_string(t);
      if (grid_only) throw ParamError("table " + msg);
      throw InternalError(msg);
    }
  }
}

// No certified violation of p >= h on [lo, hi].
void verify_above(const HammingSpace& space, const IPoly& p, const Potential& h,
                  const Rat& lo, const Rat& hi, long prec) {
  bool grid_only = h.kind == PotentialKind::table;
  for (const Rat& t : grid_samples(space, lo, hi, true, !grid_only)) {
    IV pv = p(t);
    IV hv = h.value(t, prec);
    if (pv.hi < hv.lo) {
      std::string msg =
          "dual polynomial drops below the potential at t = " + rat_to_string(t);
      if (grid_only) throw ParamError("table " + msg);
      throw InternalError(msg);
    }
  }
}

struct UlbParts {
  BoundReport rep;
  IPoly g;           // H((t-s) f_2k; h)
  IV g0{Rat(0)};     // Krawtchouk-0 coefficient of g
  IV g1{Rat(0)};     // g(1)
  IV quad_sum{Rat(0)};  // sum_{i=0..k} rho_i h(alpha_i)
};

UlbParts build_ulb(const HammingSpace& space, const Rat& ell, const Rat& s,
                   int k, const Potential& h, long prec,
                   std::vector<std::string>& notes) {
  UlbParts u{cardinality_bound(space, ell, s, k, prec), {}, {}, {}, {}};
  const Rat& L = u.rep.L;

  std::vector<HermiteNode> hn;
  const auto& nd = u.rep.rule.nodes;
  hn.push_back({nd.front(), 1});
  for (std::size_t i = 1; i + 1 < nd.size(); ++i) hn.push_back({nd[i], 2});
  hn.push_back({nd.back(), 2});

  DiscreteMeasure mu = base_measure(space);
  const Rat target = pow2(-prec);
  for (int round = 0;; ++round) {
    long p = prec << round;
    if (round > 0) u.rep.rule = quadrature(space, ell, s, k, p);
    u.g = hermite_interpolant(hn, h, p);
    u.g0 = integrate(u.g, mu);
    u.g1 = u.g(rat(1));
    u.quad_sum = IV(Rat(0));
    for (int i = 0; i <= k; ++i) {
      auto idx = static_cast<std::size_t>(i);
      IV rho = u.rep.rule.weights_exact[idx]
                   ? IV(*u.rep.rule.weights_exact[idx])
                   : u.rep.rule.weights[idx];
      u.quad_sum += rho * potential_on(h, u.rep.rule.nodes[idx], 0, p);
    }
    // Exact identity at M = L: L(L g0 - g(1)) = L^2 sum rho_i h(alpha_i).
    IV lhs = (u.g0 * L - u.g1) * L;
    IV rhs = u.quad_sum * (L * L);
    if (!lhs.intersects(rhs))
      throw InternalError("interpolant and quadrature energy forms disagree");

    // Membership in F_>=: g_0 certified positive, the rest certified
    // nonnegative.  A certified violation contradicts the Krein certificate
    // when that holds; otherwise it just rules the interpolant out.
    std::vector<IV> gk = ikraw(space, u.g);
    bool g_certified = !gk.empty() && gk[0].lo > 0;
    bool g_violated = !gk.empty() && gk[0].hi <= 0;
    for (std::size_t i = 1; i < gk.size(); ++i) {
      if (gk[i].lo < 0) g_certified = false;
      if (gk[i].hi < 0) g_violated = true;
    }
    if (g_violated) {
      if (u.rep.positivity_certificate == "krein")
        throw InternalError(
            "interpolant leaves the nonnegative-expansion class despite the "
            "Krein certificate");
      throw NoValidK("k=" + std::to_string(k) +
                     ": energy interpolant has a negative coefficient");
    }
    Rat wmax = u.g0.width();
    wmax = std::max(wmax, u.g1.width());
    wmax = std::max(wmax, u.quad_sum.width());
    if (g_certified && wmax <= target) break;
    if (round == 5) {
      if (!g_certified)
        throw NoValidK("k=" + std::to_string(k) +
                       ": could not certify the interpolant's nonnegative "
                       "expansion");
      notes.push_back("certification width target not reached for the interpolant");
      break;
    }
  }

  verify_below(space, u.g, h, ell, prec);
  return u;
}

void require_monotone(const Potential& h) {
  if (h.kind == PotentialKind::table && !h.monotone_attested)
    throw ParamError(
        "table potential lacks the absolute-monotonicity attestation "
        "required for energy bounds");
}

std::optional<BoundReport> try_bound(const HammingSpace& space, const Rat& ell,
                                     const Rat& s, int k, long prec) {
  try {
    return cardinality_bound(space, ell, s, k, prec);
  } catch (const NoValidK&) {
    return std::nullopt;
  } catch (const ParamError&) {
    return std::nullopt;
  }
}

struct SWindow {
  NodeVal lo;  // t_{k,k}^{1,0}: open left end
  NodeVal hi;  // t_{k,k}^{1,ell}: closed right end
};

std::optional<SWindow> find_s_window(const HammingSpace& space, const Rat& ell,
                                     int k) {
  if (k < 1 || 2 * k > space.n || k > space.n - 1) return std::nullopt;
  try {
    OrthoFamily f10 = adjacent_10(space, k);
    auto rlo = root_nodes_in(f10.Q[static_cast<std::size_t>(k)], rat(-1), rat(1));
    OrthoFamily f1l = adjacent_1ell(space, ell, k);
    auto rhi = root_nodes_in(f1l.Q[static_cast<std::size_t>(k)], rat(-1), rat(1));
    if (rlo.empty() || rhi.empty()) return std::nullopt;
    SWindow w{rlo.back(), rhi.back()};
    for (int round = 0; round < 160; ++round) {
      if (w.lo.is_exact() && w.hi.is_exact())
        return *w.lo.exact_value < *w.hi.exact_value ? std::optional<SWindow>(w)
                                                     : std::nullopt;
      if (w.lo.iv().hi < w.hi.iv().lo) return w;
      w.lo.refine(w.lo.iv().width() / 2);
      w.hi.refine(w.hi.iv().width() / 2);
    }
    return std::nullopt;
  } catch (const ParamError&) {
    return std::nullopt;
  }
}

enum class SolveKind { exact, bracketed, weak_top, out_of_range };

struct WindowSolve {
  SolveKind kind = SolveKind::out_of_range;
  std::optional<Rat> s_exact;
  Rat s_a, s_b;        // bracket probes with L(s_a) <= M <= L(s_b)
  Rat L_a, L_b;        // certified attained values (range witness)
};

WindowSolve solve_window(const HammingSpace& space, const Rat& ell, int k,
                         SWindow w, const Rat& M, long prec) {
  WindowSolve out;
  const Rat tiny = pow2(-prec);

  auto lo_pt = [&] { return w.lo.is_exact() ? *w.lo.exact_value : w.lo.iv().hi; };
  auto hi_pt = [&] { return w.hi.is_exact() ? *w.hi.exact_value : w.hi.iv().lo; };

  Rat b = hi_pt();
  Rat a = w.lo.is_exact() ? *w.lo.exact_value + (b - *w.lo.exact_value) / 1024
                          : lo_pt();
  for (int r = 0; r < 80 && a >= b; ++r) {
    w.lo.refine(w.lo.iv().width() / 2);
    w.hi.refine(w.hi.iv().width() / 2);
    b = hi_pt();
    a = w.lo.is_exact() ? *w.lo.exact_value + (b - *w.lo.exact_value) / 1024
                        : lo_pt();
  }
  if (a >= b) throw NoValidK("k=" + std::to_string(k) + ": empty s-window");

  auto ra = try_bound(space, ell, a, k, prec);
  for (int r = 0; r < 8 && !ra && a < b; ++r) {
    a += (b - a) / 16;
    ra = try_bound(space, ell, a, k, prec);
  }
  auto rb = try_bound(space, ell, b, k, prec);
  for (int r = 0; r < 8 && !rb && a < b; ++r) {
    b -= (b - a) / 16;
    rb = try_bound(space, ell, b, k, prec);
  }
  if (!ra || !rb || a >= b)
    throw NoValidK("k=" + std::to_string(k) + ": window probes rejected");

  // The bound must be nondecreasing in s across the window.
  Rat prev = ra->L;
  for (int j = 1; j <= 5; ++j) {
    Rat p = a + (b - a) * j / 6;
    auto rp = try_bound(space, ell, p, k, prec);
    if (!rp) throw InternalError("window interior rejected by the conditions");
    if (rp->L < prev)
      throw InternalError("cardinality bound is not monotone across the s-window");
    prev = rp->L;
  }
  if (rb->L < prev)
    throw InternalError("cardinality bound is not monotone across the s-window");

  // Extend the left probe toward the open end while M < L(a).
  while (M < ra->L) {
    Rat floor_pt = w.lo.is_exact() ? *w.lo.exact_value : w.lo.iv().lo;
    if (a - floor_pt <= tiny) break;
    Rat na;
    if (w.lo.is_exact()) {
      na = (floor_pt + a) / 2;
    } else {
      w.lo.refine((a - w.lo.iv().lo) / 16);
      na = w.lo.iv().hi;
      if (na >= a) na = (w.lo.iv().lo + a) / 2;
    }
    auto rn = try_bound(space, ell, na, k, prec);
    if (!rn) break;
    a = na;
    ra = std::move(rn);
  }
  if (M < ra->L) {
    out.kind = SolveKind::out_of_range;
    out.L_a = ra->L;
    out.L_b = rb->L;
    return out;
  }

  // Grid points are frequent exact hits (attaining families); scan them up
  // to the window's closed top before classifying against the right probe.
  {
    Rat top = w.hi.is_exact() ? *w.hi.exact_value : w.hi.iv().hi;
    for (int i = 0; i < space.n; ++i) {
      Rat t = space.grid_point(i);
      if (t < a || t > top) continue;
      auto rt = try_bound(space, ell, t, k, prec);
      if (rt && rt->L == M) {
        out.kind = SolveKind::exact;
        out.s_exact = t;
        out.L_a = ra->L;
        out.L_b = rb->L;
        return out;
      }
    }
  }

  // Extend the right probe toward the closed end while M > L(b).
  if (M > rb->L && !w.hi.is_exact()) {
    while (M > rb->L) {
      if (w.hi.iv().width() <= tiny) break;
      w.hi.refine(w.hi.iv().width() / 2);
      Rat nb = w.hi.iv().lo;
      if (nb <= b) continue;
      auto rn = try_bound(space, ell, nb, k, prec);
      if (!rn) break;
      b = nb;
      rb = std::move(rn);
    }
  }
  if (M > rb->L) {
    if (w.hi.is_exact()) {
      out.kind = SolveKind::out_of_range;  // certified sup = L(b)
    } else {
      out.kind = SolveKind::weak_top;  // M may equal the irrational-end limit
      out.s_b = b;
    }
    out.L_a = ra->L;
    out.L_b = rb->L;
    return out;
  }

  // Exact solutions first: k = 1 has a rational closed form.
  if (k == 1) {
    DiscreteMeasure mu = base_measure(space);
    Rat b1 = moment(mu, 1), b2 = moment(mu, 2);
    Rat den = M * (b1 - ell) - (1 - ell);
    if (den != 0) {
      Rat sstar = (M * (b2 - b1 * ell) - (1 - ell)) / den;
      if (a <= sstar && sstar <= b) {
        auto rs = try_bound(space, ell, sstar, 1, prec);
        if (rs && rs->L == M) {
          out.kind = SolveKind::exact;
          out.s_exact = sstar;
          out.L_a = ra->L;
          out.L_b = rb->L;
          return out;
        }
      }
    }
  }
  for (int i = 0; i < space.n; ++i) {
    Rat t = space.grid_point(i);
    if (t < a || t > b) continue;
    auto rt = try_bound(space, ell, t, k, prec);
    if (rt && rt->L == M) {
      out.kind = SolveKind::exact;
      out.s_exact = t;
      out.L_a = ra->L;
      out.L_b = rb->L;
      return out;
    }
  }

  Rat lo_s = a, hi_s = b;
  for (long it = 0; it < 4 * prec && hi_s - lo_s > tiny; ++it) {
    Rat mid = (lo_s + hi_s) / 2;
    auto rm = try_bound(space, ell, mid, k, prec);
    if (!rm) throw InternalError("window interior rejected during bisection");
    if (rm->L == M) {
      out.kind = SolveKind::exact;
      out.s_exact = mid;
      out.L_a = ra->L;
      out.L_b = rb->L;
      return out;
    }
    (rm->L < M ? lo_s : hi_s) = mid;
  }
  out.kind = SolveKind::bracketed;
  out.s_a = lo_s;
  out.s_b = hi_s;
  out.L_a = ra->L;
  out.L_b = rb->L;
  return out;
}

}  // namespace

EnergyReport energy_lower_bound(const HammingSpace& space, const Rat& ell,
                                const Rat& M, const Potential& h, int k_max,
                                long prec) {
  if (prec < 16) prec = 16;
  require_monotone(h);
  if (M < 2) throw ParamError("cardinality must be at least 2");
  if (M > Rat(space.cardinality())) throw ParamError("cardinality exceeds q^n");
  if (ell < -1 || ell >= 1) throw ParamError("ell must lie in [-1, 1)");
  int cap = space.n / 2;
  if (k_max <= 0 || k_max > cap) k_max = cap;

  EnergyReport r;
  r.space = space;
  r.ell = ell;
  r.M = M;
  r.potential = h.descriptor();

  auto finalize = [&](int k, const Rat& s, bool exact_s, IV enclosure) {
    r.k = k;
    r.s = s;
    r.s_exact = exact_s;
    r.s_solved = enclosure;
    UlbParts u = build_ulb(space, ell, s, k, h, prec, r.notes);
    IV gform = (u.g0 * M - u.g1) * M;
    if (exact_s) {
      IV qform = u.quad_sum * (M * M);
      r.lower = intersect(gform, qform);
    } else {
      r.lower = gform;
    }
    r.rule = u.rep.rule;
  };

  std::string ranges;
  std::optional<std::pair<int, Rat>> weak;
  std::vector<std::string> weak_notes;
  for (int k = 1; k <= k_max; ++k) {
    auto w = find_s_window(space, ell, k);
    if (!w) continue;
    WindowSolve ws;
    try {
      ws = solve_window(space, ell, k, *w, M, prec);
    } catch (const NoValidK&) {
      continue;
    }
    EnergyReport before = r;
    switch (ws.kind) {
      case SolveKind::exact:
        try {
          finalize(k, *ws.s_exact, true, IV(*ws.s_exact));
        } catch (const NoValidK& e) {
          r = before;
          r.notes.push_back(std::string("skipped ") + e.what());
          continue;
        }
        return r;
      case SolveKind::bracketed: {
        // Both bracket ends give feasible dual polynomials and hence valid
        // bounds for the requested M; keep the better one.
        try {
          EnergyReport base = r;
          finalize(k, ws.s_a, false, IV(ws.s_a, ws.s_b));
          EnergyReport at_a = r;
          r = base;
          finalize(k, ws.s_b, false, IV(ws.s_a, ws.s_b));
          if (at_a.lower->lo > r.lower->lo) r = at_a;
        } catch (const NoValidK& e) {
          r = before;
          r.notes.push_back(std::string("skipped ") + e.what());
          continue;
        }
        r.notes.push_back("L_2k(s) = M solved to a bracket of width " +
                          approx(ws.s_b - ws.s_a) +
                          "; bound built at a rational point inside it");
        return r;
      }
      case SolveKind::weak_top:
        if (!weak) {
          weak = {k, ws.s_b};
          weak_notes.push_back(
              "M exceeds every certified bound value on the k=" +
              std::to_string(k) + " window (up to " + approx(ws.L_b) +
              "); bound built at s = " + rat_to_string(ws.s_b) +
              ", still valid for the requested M");
        }
        break;
      case SolveKind::out_of_range:
        if (!ranges.empty()) ranges += ", ";
        ranges += "k=" + std::to_string(k) + ": [" + approx(ws.L_a) + ", " +
                  approx(ws.L_b) + "]";
        break;
    }
  }
  if (weak) {
    finalize(weak->first, weak->second, false, IV(weak->second));
    r.notes.insert(r.notes.end(), weak_notes.begin(), weak_notes.end());
    return r;
  }
  throw ParamError(
      "M = " + rat_to_string(M) +
      " is outside the attainable range of the cardinality bound for ell = " +
      rat_to_string(ell) +
      (ranges.empty() ? std::string("; no admissible k")
                      : "; certified attainable ranges: " + ranges));
}

EnergyReport energy_upper_bound(const HammingSpace& space, const Rat& M,
                                const Rat& ell, const Rat& s, int k,
                                const Potential& h, long prec,
                                bool cross_check_ell_double) {
  if (prec < 16) prec = 16;
  require_monotone(h);
  if (M < 2) throw ParamError("cardinality must be at least 2");
  if (M > Rat(space.cardinality())) throw ParamError("cardinality exceeds q^n");

  EnergyReport r;
  r.space = space;
  r.ell = ell;
  r.s = s;
  r.M = M;
  r.k = k;
  r.potential = h.descriptor();

  BoundReport rep = cardinality_bound(space, ell, s, k, prec);
  if (M > rep.L)
    throw ParamError("upper bound needs M <= L_2k = " + rat_to_string(rep.L));
  // f_i >= 0 is guaranteed by the bound's positivity certificate; indices
  // with f_i = 0 cannot be fixed up by the mixing parameter and rely on the
  // interpolant coefficient being nonpositive on its own.
  const auto& fk = rep.f_kraw;

  // g_L interpolates h at the roots of f_2k: ell and s simple, interior double.
  std::vector<HermiteNode> hn;
  hn.push_back({rep.rule.nodes.front(), 1});
  for (std::size_t i = 1; i + 1 < rep.rule.nodes.size(); ++i)
    hn.push_back({rep.rule.nodes[i], 2});
  hn.push_back({rep.rule.nodes.back(), 1});

  auto assemble = [&](const std::vector<HermiteNode>& nodes, int top_index,
                      IV& upper_out, Rat& lambda_out) {
    const Rat target = pow2(-prec);
    IPoly gl;
    Rat lambda;
    IV quad_sum{Rat(0)};
    QuadratureRule rule = rep.rule;
    for (int round = 0;; ++round) {
      long p = prec << round;
      if (round > 0) rule = quadrature(space, ell, s, k, p);
      gl = hermite_interpolant(nodes, h, p);
      std::vector<IV> gkr = ikraw(space, gl);
      lambda = Rat(0);
      for (int i = 1; i <= top_index; ++i) {
        auto idx = static_cast<std::size_t>(i);
        if (idx < gkr.size() && fk[idx] > 0 && gkr[idx].hi / fk[idx] > lambda)
          lambda = gkr[idx].hi / fk[idx];
      }
      quad_sum = IV(Rat(0));
      for (int i = 0; i <= k; ++i) {
        auto idx = static_cast<std::size_t>(i);
        IV rho = rule.weights_exact[idx] ? IV(*rule.weights_exact[idx])
                                         : rule.weights[idx];
        quad_sum += rho * potential_on(h, rule.nodes[idx], 0, p);
      }
      IPoly pdual = IPoly::of(rep.f) * IV(-lambda) + gl;
      // Membership in F_<=: p_i <= 0 for i >= 1.  Indices above top_index
      // are nonpositive structurally (the interpolant's degree stays below
      // them and lambda >= 0).  For i <= top_index with f_i > 0 the choice
      // of lambda makes p_i <= 0 exactly; a violation there is a bug.  An
      // index with f_i = 0 needs the interpolant coefficient itself to be
      // certified nonpositive, which may legitimately fail.
      bool p_certified = true;
      for (int i = 1; i <= top_index; ++i) {
        auto idx = static_cast<std::size_t>(i);
        IV pi = (idx < gkr.size() ? gkr[idx] : IV(Rat(0))) -
                IV(lambda * fk[idx]);
        if (pi.hi > 0) {
          if (fk[idx] > 0)
            throw InternalError(
                "dual polynomial leaves the nonpositive-expansion class");
          p_certified = false;
        }
      }
      if (p_certified) {
        verify_above(space, pdual, h, ell, s, p);
        IV p1 = pdual(rat(1));
        Rat scale = M * (M - rep.L) / rep.L;  // <= 0
        upper_out = p1 * scale + quad_sum * (M * M);
        lambda_out = lambda;
        if (p1.width() <= target && quad_sum.width() <= target) break;
      }
      if (round == 5) {
        if (!p_certified)
          throw NoValidK(
              "k=" + std::to_string(k) +
              ": a vanishing coefficient of f_2k blocks the nonpositive-"
              "expansion certificate of the dual polynomial");
        r.notes.push_back("certification width target not reached for the upper bound");
        break;
      }
    }
    if (lambda_out <= 0)
      r.notes.push_back("mixing parameter came out nonpositive; bound still valid");
  };

  IV upper{Rat(0)};
  Rat lambda;
  assemble(hn, 2 * k - 1, upper, lambda);
  r.upper = upper;
  r.lambda = IV(lambda);
  r.rule = rep.rule;

  if (cross_check_ell_double) {
    std::vector<HermiteNode> hn2 = hn;
    hn2.front().mult = 2;  // ell becomes a double node; degree rises to 2k
    IV upper2{Rat(0)};
    Rat lambda2;
    assemble(hn2, 2 * k, upper2, lambda2);
    r.notes.push_back(std::string("ell-double variant ") +
                      (upper2.intersects(upper) ? "agrees" : "differs") + ": " +
                      iv_to_string(upper2));
  }
  return r;
}

SSolve solve_cardinality_for_s(const HammingSpace& space, const Rat& ell,
                               int k, const Rat& M, long prec) {
  if (prec < 16) prec = 16;
  auto w = find_s_window(space, ell, k);
  if (!w) throw ParamError("no s-window for k = " + std::to_string(k));
  WindowSolve ws = solve_window(space, ell, k, *w, M, prec);
  switch (ws.kind) {
    case SolveKind::exact:
      return {*ws.s_exact, true, IV(*ws.s_exact)};
    case SolveKind::bracketed:
      return {ws.s_b, false, IV(ws.s_a, ws.s_b)};
    case SolveKind::weak_top:
      throw ParamError(
          "M = " + rat_to_string(M) + " is not certified attainable at k = " +
          std::to_string(k) + ": every rational s below the window's " +
          "irrational top gives L < M (certified range [" + approx(ws.L_a) +
          ", " + approx(ws.L_b) + "], top approached only in the limit)");
    default:
      throw ParamError("M = " + rat_to_string(M) +
                       " is not attainable at k = " + std::to_string(k) +
                       "; certified range [" + approx(ws.L_a) + ", " +
                       approx(ws.L_b) + "]");
  }
}

EnergyReport energy_strip(const HammingSpace& space, const Rat& M,
                          const Rat& ell, const Rat& s, int k,
                          const Potential& h, long prec) {
  EnergyReport up = energy_upper_bound(space, M, ell, s, k, h, prec);
  EnergyReport low = energy_lower_bound(space, ell, M, h, 0, prec);
  EnergyReport r = up;
  r.lower = low.lower;
  r.s_solved = low.s_solved;
  r.s_exact = low.s_exact;
  if (low.k != up.k)
    r.notes.push_back("lower bound used k = " + std::to_string(low.k));
  r.notes.insert(r.notes.end(), low.notes.begin(), low.notes.end());
  if (r.lower && r.upper && r.lower->lo > r.upper->hi)
    throw InternalError("energy strip is inverted");
  return r;
}

}  // namespace hambound
