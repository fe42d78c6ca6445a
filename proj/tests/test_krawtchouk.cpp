#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hambound/krawtchouk.hpp"
#include "hambound/measure.hpp"

using namespace hambound;

namespace {

Rat inner(const OrthoFamily& fam, const Poly& a, const Poly& b) {
  return integrate(a * b, fam.mu);
}

}  // namespace

TEST_CASE("base measure: mass, atoms, moments") {
  for (auto [n, q] : {std::pair{5, 2}, {6, 2}, {4, 3}, {5, 4}}) {
    HammingSpace sp(n, q);
    DiscreteMeasure mu = base_measure(sp);
    CHECK(mu.atoms.size() == static_cast<std::size_t>(n) + 1);
    CHECK(mu.total_mass() == Rat(1));
    // atom at t_d = 1-2d/n has mass (q-1)^d C(n,d) / q^n
    Rat qn(sp.cardinality());
    for (int d = 0; d <= n; ++d) {
      Rat t = sp.t_of_distance(d);
      Rat want = Rat(r_plain(sp, d)) / qn;
      bool found = false;
      for (const auto& [loc, w] : mu.atoms)
        if (loc == t) {
          CHECK(w == want);
          found = true;
        }
      CHECK(found);
    }
    // first moment: E[t] = (2-q)/q
    CHECK(moment(mu, 1) == rat(2 - q, q));
  }
  // binary: E[t^2] = 1/n
  CHECK(moment(base_measure(HammingSpace(5, 2)), 2) == rat(1, 5));
  CHECK(moment(base_measure(HammingSpace(9, 2)), 2) == rat(1, 9));
}

TEST_CASE("krawtchouk family: normalization, orthogonality, norms") {
  for (auto [n, q] : {std::pair{7, 2}, {5, 3}, {4, 4}}) {
    HammingSpace sp(n, q);
    OrthoFamily fam = krawtchouk_family(sp, n);
    REQUIRE(fam.Q.size() == static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) {
      CHECK(fam.Q[i].degree() == i);
      CHECK(fam.Q[i](Rat(1)) == Rat(1));
      CHECK(fam.norm[i] == r_plain(sp, i));
      CHECK(inner(fam, fam.Q[i], fam.Q[i]) == Rat(1) / r_plain(sp, i));
      for (int j = 0; j < i; ++j)
        CHECK(inner(fam, fam.Q[i], fam.Q[j]) == Rat(0));
    }
  }
}

TEST_CASE("krawtchouk values against the z-form") {
  for (auto [n, q] : {std::pair{6, 2}, {5, 3}}) {
    HammingSpace sp(n, q);
    OrthoFamily fam = krawtchouk_family(sp, n);
    for (int i = 0; i <= n; ++i) {
      Poly Kz = krawtchouk_in_z(sp, i);
      CHECK(Kz(Rat(0)) == r_plain(sp, i));
      for (int d = 0; d <= n; ++d)
        CHECK(fam.Q[i](sp.t_of_distance(d)) * r_plain(sp, i) == Kz(Rat(d)));
    }
  }
  // K_2(2) = -3 for n=4, q=3
  CHECK(krawtchouk_in_z(HammingSpace(4, 3), 2)(Rat(2)) == Rat(-3));
  // binary K_1(z) = n - 2z
  CHECK(krawtchouk_in_z(HammingSpace(8, 2), 1)(Rat(3)) == Rat(2));
}

TEST_CASE("S_partial is the cumulative norm sum") {
  HammingSpace sp(9, 2);
  Rat acc(0);
  for (int j = 0; j <= 5; ++j) {
    acc += r_plain(sp, j);
    CHECK(S_partial(sp, j) == acc);
  }
}

TEST_CASE("adjacent families 1,0 and 1,1") {
  for (auto [n, q] : {std::pair{7, 2}, {5, 3}}) {
    HammingSpace sp(n, q);
    int m = 3;
    OrthoFamily f10 = adjacent_10(sp, m);
    OrthoFamily f11 = adjacent_11(sp, m);
    for (int i = 0; i <= m; ++i) {
      CHECK(f10.Q[i](Rat(1)) == Rat(1));
      CHECK(f11.Q[i](Rat(1)) == Rat(1));
      CHECK(inner(f10, f10.Q[i], f10.Q[i]) > 0);
      for (int j = 0; j < i; ++j) {
        CHECK(inner(f10, f10.Q[i], f10.Q[j]) == Rat(0));
        CHECK(inner(f11, f11.Q[i], f11.Q[j]) == Rat(0));
      }
      CHECK(r10_norm(sp, i) > 0);
      CHECK(r11_norm(sp, i) > 0);
    }
    // the 1,0 measure is (1-t) times base, renormalized to mass 1
    DiscreteMeasure base = base_measure(sp);
    Rat denom(0);
    for (const auto& [t, w] : base.atoms) denom += (Rat(1) - t) * w;
    for (const auto& [t, w] : f10.mu.atoms) {
      bool found = false;
      for (const auto& [tb, wb] : base.atoms)
        if (tb == t) {
          CHECK(w == (Rat(1) - t) * wb / denom);
          found = true;
        }
      CHECK(found);
    }
  }
}

TEST_CASE("adjacent 1,ell family: orthogonality and the ell=-1 degeneration") {
  HammingSpace sp(8, 2);
  Rat ell = rat(-3, 4);
  int k = 3;
  OrthoFamily f = adjacent_1ell(sp, ell, k);
  for (int i = 0; i <= k; ++i) {
    CHECK(f.Q[i](Rat(1)) == Rat(1));
    for (int j = 0; j < i; ++j) CHECK(inner(f, f.Q[i], f.Q[j]) == Rat(0));
  }
  // at ell = -1 the weight (t-ell) becomes (1+t): same polynomials as 1,1
  OrthoFamily fm1 = adjacent_1ell(sp, rat(-1), k);
  OrthoFamily f11 = adjacent_11(sp, k);
  for (int i = 0; i <= k; ++i) CHECK(fm1.Q[i] == f11.Q[i]);
}

TEST_CASE("adjacent 1,ell,s family: orthogonality under the window measure") {
  HammingSpace sp(6, 2);
  Rat ell = rat(-1, 3), s = rat(1, 3);
  int k = 2;  // family holds degrees 0..k-1
  OrthoFamily f = adjacent_1ells(sp, ell, s, k);
  for (std::size_t i = 0; i < f.Q.size(); ++i) {
    CHECK(f.Q[i](Rat(1)) == Rat(1));
    for (std::size_t j = 0; j < i; ++j)
      CHECK(integrate(f.Q[i] * f.Q[j], f.mu) == Rat(0));
  }
}

TEST_CASE("signed measures are positive definite where needed") {
  HammingSpace sp(9, 2);
  DiscreteMeasure m1l = signed_measure(sp, MeasureKind::one_ell, rat(-1, 3));
  PDResult pd = check_positive_definite(m1l, 2);
  CHECK(pd.positive_definite);
  for (const Rat& d : pd.minors) CHECK(d > 0);
}

TEST_CASE("krawtchouk expansion round trip") {
  HammingSpace sp(7, 2);
  OrthoFamily fam = krawtchouk_family(sp, 7);
  Poly p = from_roots({rat(-1, 7), rat(3, 7), rat(5, 7)});
  std::vector<Rat> c = to_krawtchouk(sp, p);
  REQUIRE(c.size() == 4);
  CHECK(from_krawtchouk(sp, c) == p);
  // coefficient extraction is the dual pairing: c_i = r_i <p, Q_i>
  for (int i = 0; i <= 3; ++i)
    CHECK(c[i] == integrate(p * fam.Q[i], fam.mu) * r_plain(sp, i));
  // expanding Q_j returns the unit vector
  std::vector<Rat> e = to_krawtchouk(sp, fam.Q[3]);
  for (std::size_t i = 0; i < e.size(); ++i)
    CHECK(e[i] == (i == 3 ? Rat(1) : Rat(0)));
}

TEST_CASE("radau rule with fixed node 1 integrates low degrees exactly") {
  for (auto [n, q, k] : {std::tuple{8, 2, 2}, {8, 2, 3}, {5, 3, 2}}) {
    HammingSpace sp(n, q);
    RadauRule10 rule = radau_rule_10(sp, k, 128);
    REQUIRE(rule.nodes.size() == static_cast<std::size_t>(k));
    DiscreteMeasure mu = base_measure(sp);
    for (int u = 0; u <= 2 * k; ++u) {
      IV acc(rule.weight_at_one);  // node t = 1 contributes 1^u = 1
      for (std::size_t i = 0; i < rule.nodes.size(); ++i)
        acc += rule.weights[i] * ipow(rule.nodes[i].iv(), static_cast<unsigned>(u));
      CHECK(acc.contains(moment(mu, static_cast<unsigned>(u))));
      CHECK(acc.width() <= pow2(-64));
    }
    for (const IV& w : rule.weights) CHECK(w.lo > 0);
  }
}
