#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hambound/closed_forms.hpp"
#include "hambound/levenshtein.hpp"

using namespace hambound;

TEST_CASE("distance window translation") {
  HammingSpace sp(6, 2);
  auto [ell, s] = ls_of_dD(sp, 2, 5);
  CHECK(s == rat(1, 3));
  CHECK(ell == rat(-2, 3));
  auto [d, D] = dD_of_ls(sp, rat(-2, 3), rat(1, 3));
  CHECK(d == 2);
  CHECK(D == 5);
  CHECK_THROWS_AS(ls_of_dD(sp, 0, 5), ParamError);
  CHECK_THROWS_AS(ls_of_dD(sp, 3, 7), ParamError);
  CHECK_THROWS_AS(ls_of_dD(sp, 4, 3), ParamError);
}

TEST_CASE("frozen cardinality bounds, k = 1") {
  struct Row {
    int n, q;
    const char *ell, *s, *L;
  };
  const Row rows[] = {
      {6, 2, "-1/3", "1/3", "16"},       {5, 2, "-3/5", "1/5", "16"},
      {56, 3, "-17/28", "-2/7", "729"},  {78, 4, "-25/39", "-17/39", "4096"},
  };
  for (const Row& r : rows) {
    CAPTURE(r.n);
    HammingSpace sp(r.n, r.q);
    BoundReport rep =
        cardinality_bound(sp, rat_from_string(r.ell), rat_from_string(r.s), 1, 128);
    CHECK(rep.L == rat_from_string(r.L));
    CHECK(rep.L_floor == floor_rat(rep.L));
    CHECK(rep.explicit_agrees);
    CHECK(rep.L_explicit == rep.L);
    CHECK(rep.cond.l_s_range);
    CHECK(rep.cond.s_location);
    // the closed form agrees independently
    CHECK(hkl_bound(sp, rat_from_string(r.ell), rat_from_string(r.s)) ==
          rat_from_string(r.L));
  }
}

TEST_CASE("ovoid identity: L_2 = q^4 at the projective parameters") {
  for (int q = 2; q <= 5; ++q) {
    OvoidParams op = ovoid_params(q);
    CHECK(op.space.n == q * q + 1);
    BoundReport rep = cardinality_bound(op.space, op.ell, op.s, 1, 128);
    CHECK(rep.L == Rat(op.M));
    CHECK(rep.L == pow_rat(Rat(q), 4));
  }
}

TEST_CASE("frozen cardinality bounds, k = 2 and k = 3") {
  // projections of the binary Golay code
  BoundReport g23 = cardinality_bound(HammingSpace(23, 2), rat(-9, 23),
                                      rat(7, 23), 2, 128);
  CHECK(g23.L == Rat(2048));
  BoundReport g22 = cardinality_bound(HammingSpace(22, 2), rat(-5, 11),
                                      rat(3, 11), 2, 128);
  CHECK(g22.L == Rat(1024));
  // even-weight codes sit at ell = (2-n)/n, s = (n-4)/n with k = (n-3)/2
  for (int n : {5, 7, 9}) {
    EvenWeightParams ep = even_weight_params(n);
    BoundReport rep = cardinality_bound(ep.space, ep.ell, ep.s, ep.k, 128);
    CHECK(rep.L == Rat(ep.M));
    CHECK(rep.L == pow2(n - 1));
  }
}

TEST_CASE("positivity certificates: krein when it holds, direct otherwise") {
  // the even-weight instance n=6-style window has a vanishing coefficient
  BoundReport direct = cardinality_bound(HammingSpace(6, 2), rat(-1, 3),
                                         rat(1, 3), 1, 128);
  CHECK(direct.positivity_certificate == "direct");
  CHECK(!direct.cond.krein);
  REQUIRE(direct.f_kraw.size() == 3);
  CHECK(direct.f_kraw[0] == rat(1, 18));
  CHECK(direct.f_kraw[1] == Rat(0));
  CHECK(direct.f_kraw[2] == rat(5, 6));

  BoundReport krein = cardinality_bound(HammingSpace(6, 2), rat(-1), rat(0),
                                        1, 128);
  CHECK(krein.positivity_certificate == "krein");
  CHECK(krein.cond.krein);
  for (std::size_t i = 0; i < krein.f_kraw.size(); ++i)
    CHECK(krein.f_kraw[i] > 0);

  // in both cases the certificate polynomial is nonpositive on [ell, s] grid
  for (const BoundReport* rep : {&direct, &krein})
    for (int i = 0; i < rep->space.n; ++i) {
      Rat t = rep->space.grid_point(i);
      if (t >= rep->ell && t <= rep->s) CHECK(rep->f(t) <= 0);
    }
}

TEST_CASE("levenshtein polynomial structure") {
  HammingSpace sp(9, 2);
  Rat ell = rat(-7, 9), s = rat(1, 9);
  for (int k : {1, 2, 3}) {
    Poly f = levenshtein_polynomial(sp, ell, s, k);
    CHECK(f.degree() == 2 * k);
    CHECK(f(ell) == Rat(0));
    CHECK(f(s) == Rat(0));
    CHECK(f(Rat(1)) > 0);
    // interior roots are double: squarefree part has degree k + 1
    CHECK(squarefree_part(f).degree() == k + 1);
  }
}

TEST_CASE("quadrature rule: structure, positivity, exactness, 1/rho = L") {
  HammingSpace sp(23, 2);
  Rat ell = rat(-9, 23), s = rat(7, 23);
  QuadratureRule rule = quadrature(sp, ell, s, 2, 128);
  REQUIRE(rule.nodes.size() == 3);
  CHECK(rule.nodes.front().is_exact());
  CHECK(*rule.nodes.front().exact_value == ell);
  CHECK(rule.nodes.back().is_exact());
  CHECK(*rule.nodes.back().exact_value == s);
  CHECK(rule.nodes[1].cmp(ell) == 1);
  CHECK(rule.nodes[1].cmp(s) == -1);
  for (const IV& w : rule.weights) CHECK(w.lo > 0);
  CHECK(rule.weight_at_one > 0);

  BoundReport rep = cardinality_bound(sp, ell, s, 2, 128);
  CHECK(Rat(1) / rule.weight_at_one == rep.L);

  // exactness on monomials t^u, u <= 2k
  DiscreteMeasure mu = base_measure(sp);
  for (unsigned u = 0; u <= 4; ++u) {
    IV acc(rule.weight_at_one);
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      IV w = rule.weights_exact[i] ? IV(*rule.weights_exact[i]) : rule.weights[i];
      acc += w * ipow(rule.nodes[i].iv(), u);
    }
    CHECK(acc.contains(moment(mu, u)));
  }
}

TEST_CASE("inadmissible parameters throw NoValidK, bad domains ParamError") {
  HammingSpace sp(12, 2);
  // s = 0 is outside the k = 2 window at ell = -1
  CHECK_THROWS_AS(cardinality_bound(sp, rat(-1), Rat(0), 2, 128), NoValidK);
  // s <= ell is not a window at all
  CHECK_THROWS_AS(cardinality_bound(sp, rat(1, 3), rat(-1, 3), 1, 128),
                  ParamError);
  CHECK_THROWS_AS(cardinality_bound(sp, rat(-3, 2), Rat(0), 1, 128), ParamError);
  CHECK_THROWS_AS(cardinality_bound(sp, rat(-1), Rat(1), 1, 128), ParamError);
  CHECK_THROWS_AS(cardinality_bound(sp, rat(-1), Rat(0), 0, 128), ParamError);
}

TEST_CASE("select_k scans and picks the smallest bound") {
  HammingSpace sp(23, 2);
  KSelection sel = select_k(sp, rat(-9, 23), rat(7, 23), 5, 128);
  REQUIRE(sel.best.has_value());
  CHECK(*sel.best == 2);
  REQUIRE(sel.report.has_value());
  CHECK(sel.report->L == Rat(2048));
  for (int k : sel.valid) {
    BoundReport rep = cardinality_bound(sp, rat(-9, 23), rat(7, 23), k, 128);
    CHECK(rep.L >= sel.report->L);
  }
  CHECK(!sel.rejected.empty());

  // s below every k-window: nothing admissible
  KSelection none = select_k(HammingSpace(4, 2), rat(-7, 8), rat(-3, 4), 2, 128);
  CHECK(!none.best.has_value());
  CHECK(none.valid.empty());
  CHECK(none.rejected.size() == 2);
}

TEST_CASE("binary closed forms match the computed bounds on their windows") {
  for (int n : {6, 9, 13}) {
    HammingSpace sp(n, 2);
    Rat ell = rat(2 - n, n);
    for (int i = 0; i < n; ++i) {
      Rat s = sp.grid_point(i);
      if (in_l2_window_binary(n, s)) {
        BoundReport rep = cardinality_bound(sp, ell, s, 1, 128);
        CHECK(l2_closed_binary(n, s) == rep.L);
      }
      if (in_l4_window_binary(n, s)) {
        Rat closed;
        bool pole = false;
        try {
          closed = l4_closed_binary(n, s);
        } catch (const ParamError&) {
          pole = true;  // n = 6 right endpoint: denominator vanishes
        }
        if (!pole) {
          BoundReport rep = cardinality_bound(sp, ell, s, 2, 128);
          CHECK(closed == rep.L);
        } else {
          CHECK_THROWS(cardinality_bound(sp, ell, s, 2, 128));
        }
      }
    }
  }
}

TEST_CASE("root_nodes_in: exact quadratic roots and certified brackets") {
  Poly p = from_roots({rat(-1, 2), rat(1, 3)});
  auto r = root_nodes_in(p, rat(-1), rat(1));
  REQUIRE(r.size() == 2);
  CHECK(r[0].is_exact());
  CHECK(*r[0].exact_value == rat(-1, 2));
  CHECK(r[1].is_exact());

  Poly irr{Rat(-2), Rat(0), Rat(1)};  // t^2 - 2
  auto ri = root_nodes_in(irr, Rat(0), Rat(2));
  REQUIRE(ri.size() == 1);
  CHECK(!ri[0].is_exact());
  CHECK(ri[0].cmp(rat(7, 5)) == 1);
  CHECK(ri[0].cmp(rat(3, 2)) == -1);
}
