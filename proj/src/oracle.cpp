#include "hambound/oracle.hpp"

#include <algorithm>
#include <bit>

#include "hambound/krawtchouk.hpp"
#include "hambound/measure.hpp"

namespace hambound {

int word_distance(const HammingSpace& space, std::uint32_t a, std::uint32_t b) {
  if (space.q == 2) return std::popcount(a ^ b);
  int d = 0;
  std::uint32_t x = a, y = b;
  for (int i = 0; i < space.n; ++i) {
    if (x % static_cast<unsigned>(space.q) != y % static_cast<unsigned>(space.q))
      ++d;
    x /= static_cast<unsigned>(space.q);
    y /= static_cast<unsigned>(space.q);
  }
  return d;
}

std::string code_to_text(const Code& c) {
  std::string out;
  for (std::uint32_t w : c.words) {
    std::string line;
    std::uint32_t x = w;
    for (int i = 0; i < c.space.n; ++i) {
      line.push_back(static_cast<char>('0' + x % static_cast<unsigned>(c.space.q)));
      x /= static_cast<unsigned>(c.space.q);
    }
    out += line;
    out.push_back('\n');
  }
  return out;
}

namespace {

long checked_point_count(const HammingSpace& space, const OracleBudget& budget) {
  Int total = space.cardinality();
  if (total > budget.max_points)
    throw BudgetError("q^n = " + total.get_str() + " exceeds the oracle budget " +
                      std::to_string(budget.max_points));
  return total.get_si();
}

struct Bitset {
  std::vector<std::uint64_t> w;
  explicit Bitset(long n = 0) : w((static_cast<std::size_t>(n) + 63) / 64, 0) {}
  void set(long i) { w[static_cast<std::size_t>(i) >> 6] |= 1ull << (i & 63); }
  bool test(long i) const {
    return (w[static_cast<std::size_t>(i) >> 6] >> (i & 63)) & 1;
  }
  long count() const {
    long c = 0;
    for (std::uint64_t x : w) c += std::popcount(x);
    return c;
  }
  void and_with(const Bitset& o) {
    for (std::size_t i = 0; i < w.size(); ++i) w[i] &= o.w[i];
  }
  long next(long from) const {  // first set bit >= from, or -1
    std::size_t word = static_cast<std::size_t>(from) >> 6;
    if (word >= w.size()) return -1;
    std::uint64_t cur = w[word] & (~0ull << (from & 63));
    while (true) {
      if (cur) return static_cast<long>(word << 6) + std::countr_zero(cur);
      if (++word >= w.size()) return -1;
      cur = w[word];
    }
  }
  void clear(long i) { w[static_cast<std::size_t>(i) >> 6] &= ~(1ull << (i & 63)); }
};

struct CliqueSearch {
  long npoints;
  const std::vector<Bitset>& adj;
  std::vector<long> cur, best;
  long long visited = 0;

  void run(std::vector<long>& stack, Bitset cands) {
    ++visited;
    long remaining = cands.count();
    if (static_cast<long>(stack.size()) + remaining <=
        static_cast<long>(best.size()))
      return;  // cannot strictly improve
    if (remaining == 0) {
      if (stack.size() > best.size()) best = stack;
      return;
    }
    for (long v = cands.next(0); v >= 0; v = cands.next(v + 1)) {
      if (static_cast<long>(stack.size()) + cands.count() <=
          static_cast<long>(best.size()))
        return;
      cands.clear(v);
      Bitset next = cands;
      next.and_with(adj[static_cast<std::size_t>(v)]);
      stack.push_back(v);
      run(stack, next);
      stack.pop_back();
    }
  }
};

}  // namespace

MaxCodeResult exhaustive_max_code(const HammingSpace& space, int d, int D,
                                  const OracleBudget& budget) {
  if (d < 1 || D > space.n || d > D)
    throw ParamError("need 1 <= d <= D <= n");
  long npoints = checked_point_count(space, budget);

  std::vector<Bitset> adj(static_cast<std::size_t>(npoints), Bitset(npoints));
  for (long a = 0; a < npoints; ++a)
    for (long b = a + 1; b < npoints; ++b) {
      int dist = word_distance(space, static_cast<std::uint32_t>(a),
                               static_cast<std::uint32_t>(b));
      if (d <= dist && dist <= D) {
        adj[static_cast<std::size_t>(a)].set(b);
        adj[static_cast<std::size_t>(b)].set(a);
      }
    }

  // Every maximum code has a translate containing the zero word.
  CliqueSearch cs{npoints, adj, {}, {}, 0};
  std::vector<long> stack{0};
  Bitset cands = adj[0];
  cs.run(stack, cands);

  MaxCodeResult res;
  res.size = static_cast<int>(std::max<std::size_t>(cs.best.size(), 1));
  res.nodes_visited = cs.visited;
  res.witness.space = space;
  if (cs.best.empty()) cs.best = {0};  // the single-word code
  for (long v : cs.best) res.witness.words.push_back(static_cast<std::uint32_t>(v));
  std::sort(res.witness.words.begin(), res.witness.words.end());
  return res;
}

namespace {

Rat inner_product(const HammingSpace& space, int dist) {
  return rat(space.n - 2L * dist, space.n);
}

struct EnergyEval {
  const HammingSpace& space;
  const Potential& h;
  long prec;
  bool exact;
  std::vector<std::optional<Rat>> exact_by_dist;  // index 1..n
  std::vector<std::optional<IV>> iv_by_dist;

  EnergyEval(const HammingSpace& sp, const Potential& hh, long pr)
      : space(sp), h(hh), prec(pr), exact(hh.exact()) {
    exact_by_dist.resize(static_cast<std::size_t>(sp.n) + 1);
    iv_by_dist.resize(static_cast<std::size_t>(sp.n) + 1);
  }
  IV at(int dist) {
    auto idx = static_cast<std::size_t>(dist);
    if (!iv_by_dist[idx]) {
      IV v = h.value(inner_product(space, dist), prec);
      iv_by_dist[idx] = v;
      if (exact) exact_by_dist[idx] = v.lo;
    }
    return *iv_by_dist[idx];
  }
};

}  // namespace

EnergyExtrema exhaustive_energy_extrema(const HammingSpace& space, int M, int d,
                                        int D, const Potential& h, long prec,
                                        const OracleBudget& budget) {
  if (d < 1 || D > space.n || d > D)
    throw ParamError("need 1 <= d <= D <= n");
  if (M < 2) throw ParamError("energy needs M >= 2");
  if (M > budget.max_M)
    throw BudgetError("M = " + std::to_string(M) + " exceeds the oracle budget " +
                      std::to_string(budget.max_M));
  long npoints = checked_point_count(space, budget);
  if (M > npoints) throw ParamError("M exceeds q^n");

  std::vector<Bitset> adj(static_cast<std::size_t>(npoints), Bitset(npoints));
  std::vector<int> wt(static_cast<std::size_t>(npoints));
  for (long a = 0; a < npoints; ++a) {
    wt[static_cast<std::size_t>(a)] =
        word_distance(space, static_cast<std::uint32_t>(a), 0);
    for (long b = a + 1; b < npoints; ++b) {
      int dist = word_distance(space, static_cast<std::uint32_t>(a),
                               static_cast<std::uint32_t>(b));
      if (d <= dist && dist <= D) {
        adj[static_cast<std::size_t>(a)].set(b);
        adj[static_cast<std::size_t>(b)].set(a);
      }
    }
  }

  EnergyEval ev(space, h, prec);
  EnergyExtrema out;

  std::vector<long> chosen;  // words besides the zero word
  auto consider = [&]() {
    ++out.codes_enumerated;
    IV e(Rat(0));
    std::vector<std::uint32_t> words{0};
    for (long v : chosen) words.push_back(static_cast<std::uint32_t>(v));
    for (std::size_t i = 0; i < words.size(); ++i)
      for (std::size_t j = i + 1; j < words.size(); ++j)
        e += ev.at(word_distance(space, words[i], words[j])) * rat(2);
    Code code;
    code.space = space;
    code.words = words;
    if (!out.min_energy || e.lo < out.min_energy->lo) {
      out.min_energy = e;
      out.argmin = code;
    }
    if (!out.max_energy || e.hi > out.max_energy->hi) {
      out.max_energy = e;
      out.argmax = std::move(code);
    }
  };

  // DFS over ascending candidate words; for q = 2 the first chosen word is
  // restricted to the low-packed representative of its weight class and the
  // rest to weights >= that weight (sound under coordinate permutation).
  std::vector<long> first_words;
  bool canonical_first = space.q == 2;
  if (canonical_first) {
    for (int w = d; w <= D; ++w)
      first_words.push_back((1ll << w) - 1);
  }

  // recursive lambda
  auto rec = [&](auto&& self, Bitset cands, long from, int min_wt) -> void {
    if (static_cast<int>(chosen.size()) == M - 1) {
      consider();
      return;
    }
    long need = M - 1 - static_cast<int>(chosen.size());
    if (cands.count() < need) return;
    for (long v = cands.next(from); v >= 0; v = cands.next(v + 1)) {
      if (wt[static_cast<std::size_t>(v)] < min_wt) continue;
      Bitset next = cands;
      next.clear(v);
      next.and_with(adj[static_cast<std::size_t>(v)]);
      chosen.push_back(v);
      self(self, next, canonical_first ? 0 : v + 1, min_wt);
      chosen.pop_back();
      cands.clear(v);
      if (cands.count() < need) return;
    }
  };

  if (canonical_first) {
    for (long f : first_words) {
      if (f >= npoints) continue;
      if (M == 1) break;
      chosen.assign(1, f);
      if (M == 2) {
        consider();
      } else {
        Bitset cands = adj[0];
        cands.and_with(adj[static_cast<std::size_t>(f)]);
        if (cands.test(f)) cands.clear(f);
        rec(rec, cands, 0, wt[static_cast<std::size_t>(f)]);
      }
      chosen.clear();
    }
  } else {
    rec(rec, adj[0], 0, 0);
  }

  out.feasible = out.codes_enumerated > 0;
  if (out.feasible && ev.exact) {
    out.min_exact = out.min_energy->lo;
    out.max_exact = out.max_energy->hi;
  }
  return out;
}

std::vector<Rat> average_distance_distribution(const Code& c) {
  const auto n = static_cast<std::size_t>(c.space.n);
  std::vector<Int> pairs(n + 1, Int(0));
  for (std::size_t i = 0; i < c.words.size(); ++i)
    for (std::size_t j = 0; j < c.words.size(); ++j)
      ++pairs[static_cast<std::size_t>(
          word_distance(c.space, c.words[i], c.words[j]))];
  std::vector<Rat> B;
  B.reserve(n + 1);
  Rat m(static_cast<long>(c.words.size()));
  for (std::size_t i = 0; i <= n; ++i) B.push_back(Rat(pairs[i]) / m);
  return B;
}

std::vector<Rat> macwilliams(const Code& c) {
  std::vector<Rat> B = average_distance_distribution(c);
  OrthoFamily fam = krawtchouk_family(c.space, c.space.n);
  Rat m(static_cast<long>(c.words.size()));
  std::vector<Rat> Bp;
  Bp.reserve(static_cast<std::size_t>(c.space.n) + 1);
  for (int j = 0; j <= c.space.n; ++j) {
    Rat sum(0);
    for (int i = 0; i <= c.space.n; ++i)
      sum += B[static_cast<std::size_t>(i)] *
             fam.Q[static_cast<std::size_t>(j)](inner_product(c.space, i));
    Rat bpj = sum * r_plain(c.space, j) / m;
    if (bpj < 0) throw InternalError("negative dual distribution entry");
    Bp.push_back(bpj);
  }
  return Bp;
}

int design_strength(const Code& c) {
  const HammingSpace& space = c.space;
  long npoints = space.cardinality().get_si();
  Rat m(static_cast<long>(c.words.size()));
  DiscreteMeasure mu = base_measure(space);

  // Per-point distance histograms to the code.
  std::vector<std::vector<long>> hist(static_cast<std::size_t>(npoints),
                                      std::vector<long>(
                                          static_cast<std::size_t>(space.n) + 1,
                                          0));
  for (long x = 0; x < npoints; ++x)
    for (std::uint32_t y : c.words)
      ++hist[static_cast<std::size_t>(x)][static_cast<std::size_t>(
          word_distance(space, static_cast<std::uint32_t>(x), y))];

  std::vector<Rat> tpow(static_cast<std::size_t>(space.n) + 1, Rat(1));
  int tau = 0;
  for (int u = 1; u <= space.n; ++u) {
    for (int dist = 0; dist <= space.n; ++dist)
      tpow[static_cast<std::size_t>(dist)] *= inner_product(space, dist);
    Rat target = moment(mu, static_cast<unsigned>(u)) * m;
    bool ok = true;
    for (long x = 0; x < npoints && ok; ++x) {
      Rat sum(0);
      for (int dist = 0; dist <= space.n; ++dist)
        sum += tpow[static_cast<std::size_t>(dist)] *
               hist[static_cast<std::size_t>(x)][static_cast<std::size_t>(dist)];
      ok = sum == target;
    }
    if (!ok) break;
    tau = u;
  }

  // Cross-check against the dual-distribution vanishing pattern.
  std::vector<Rat> Bp = macwilliams(c);
  int tau_b = 0;
  for (int j = 1; j <= space.n && Bp[static_cast<std::size_t>(j)] == 0; ++j)
    tau_b = j;
  if (tau_b != tau)
    throw InternalError("strength checks disagree: moments say " +
                        std::to_string(tau) + ", dual distribution says " +
                        std::to_string(tau_b));
  return tau;
}

Rat code_energy_exact(const Code& c, const Potential& h) {
  if (!h.exact())
    throw ParamError("potential does not evaluate exactly; use code_energy");
  IV e = code_energy(c, h, 64);
  if (!e.is_point()) throw InternalError("exact potential gave a wide interval");
  return e.lo;
}

IV code_energy(const Code& c, const Potential& h, long prec) {
  std::vector<std::optional<IV>> by_dist(static_cast<std::size_t>(c.space.n) + 1);
  IV e(Rat(0));
  for (std::size_t i = 0; i < c.words.size(); ++i)
    for (std::size_t j = i + 1; j < c.words.size(); ++j) {
      int dist = word_distance(c.space, c.words[i], c.words[j]);
      auto idx = static_cast<std::size_t>(dist);
      if (!by_dist[idx]) by_dist[idx] = h.value(inner_product(c.space, dist), prec);
      e += *by_dist[idx] * rat(2);
    }
  return e;
}

Code even_weight_code(int n) {
  if (n < 1 || n > 20) throw ParamError("even-weight construction needs 1 <= n <= 20");
  Code c;
  c.space = HammingSpace{n, 2};
  for (std::uint32_t w = 0; w < (1u << n); ++w)
    if (std::popcount(w) % 2 == 0) c.words.push_back(w);
  return c;
}

Code whole_space(const HammingSpace& space) {
  Int total = space.cardinality();
  if (total > 1 << 20) throw ParamError("space too large to enumerate");
  Code c;
  c.space = space;
  long npoints = total.get_si();
  for (long w = 0; w < npoints; ++w)
    c.words.push_back(static_cast<std::uint32_t>(w));
  return c;
}

}  // namespace hambound
