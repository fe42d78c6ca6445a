#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hambound/hamming.hpp"
#include "hambound/interval.hpp"
#include "hambound/poly.hpp"
#include "hambound/rational.hpp"
#include "hambound/sturm.hpp"

using namespace hambound;

TEST_CASE("rational helpers") {
  CHECK(rat(6, 4) == rat(3, 2));
  CHECK(rat(0, 7) == Rat(0));
  CHECK(rat(-2, 4) == rat(-1, 2));
  CHECK_THROWS_AS(rat(1, 0), ParamError);

  CHECK(rat_from_string("3/4") == rat(3, 4));
  CHECK(rat_from_string("-3/6") == rat(-1, 2));
  CHECK(rat_from_string("12") == rat(12));
  CHECK_THROWS_AS(rat_from_string("1/0"), ParamError);
  CHECK_THROWS_AS(rat_from_string("a/b"), ParamError);
  CHECK_THROWS_AS(rat_from_string(""), ParamError);
  CHECK_THROWS_AS(rat_from_string("1.5"), ParamError);

  CHECK(rat_to_string(rat(-5, 3)) == "-5/3");
  CHECK(rat_to_string(Rat(7)) == "7");

  CHECK(floor_rat(rat(7, 2)) == 3);
  CHECK(floor_rat(rat(-7, 2)) == -4);
  CHECK(ceil_rat(rat(7, 2)) == 4);
  CHECK(is_integer(rat(8, 4)));
  CHECK(!is_integer(rat(8, 3)));

  CHECK(pow_rat(rat(2, 3), 3) == rat(8, 27));
  CHECK(pow_rat(rat(2, 3), -2) == rat(9, 4));
  CHECK(pow2(-3) == rat(1, 8));
  CHECK(pow2(10) == rat(1024));

  CHECK(binomial(23, 7) == 245157);
  CHECK(binomial(5, 0) == 1);
  CHECK(binomial(4, 7) == 0);
  CHECK(factorial(6) == 720);
}

TEST_CASE("interval arithmetic") {
  IV a(rat(1, 2), rat(3, 2));
  IV b(rat(-1), rat(3, 4));
  CHECK((a + b).lo == rat(-1, 2));
  CHECK((a + b).hi == rat(9, 4));
  CHECK((a * b).lo == rat(-3, 2));
  CHECK((a * b).hi == rat(9, 8));
  CHECK((-a).lo == rat(-3, 2));
  CHECK(a.width() == Rat(1));
  CHECK(a.contains(Rat(1)));
  CHECK(b.contains_zero());
  CHECK(a.intersects(b));
  CHECK(!a.intersects(IV(Rat(2), Rat(3))));
  CHECK(a.certainly_positive());
  CHECK(IV(rat(-2), rat(-1)).certainly_negative());
  CHECK(recip(IV(rat(1, 2), Rat(2))).lo == rat(1, 2));
  CHECK(recip(IV(rat(1, 2), Rat(2))).hi == Rat(2));
  CHECK_THROWS_AS(recip(b), InternalError);
  CHECK(intersect(a, b).lo == rat(1, 2));
  CHECK(intersect(a, b).hi == rat(3, 4));
  CHECK_THROWS_AS(intersect(a, IV(Rat(2), Rat(3))), InternalError);
  CHECK(ipow(IV(rat(-2), rat(1)), 2).lo == Rat(0));
  CHECK(ipow(IV(rat(-2), rat(1)), 2).hi == Rat(4));
}

TEST_CASE("polynomial arithmetic and evaluation") {
  Poly p{Rat(1), Rat(-2), Rat(1)};  // (t-1)^2
  CHECK(p.degree() == 2);
  CHECK(p(Rat(1)) == Rat(0));
  CHECK(p(rat(1, 2)) == rat(1, 4));

  Poly q = from_roots({rat(1, 3), rat(-1, 2)});
  CHECK(q(rat(1, 3)) == Rat(0));
  CHECK(q(rat(-1, 2)) == Rat(0));
  CHECK(q.leading() == Rat(1));

  CHECK((p * q).degree() == 4);
  CHECK((p + q)(Rat(2)) == p(Rat(2)) + q(Rat(2)));
  CHECK(derivative(p)(Rat(1)) == Rat(0));

  auto [quo, rem] = divrem(p * q, q);
  CHECK(quo == p);
  CHECK(rem.is_zero());

  Poly g = poly_gcd(p * q, p);
  CHECK(g.degree() == 2);
  CHECK(g.leading() == Rat(1));

  CHECK(squarefree_part(p).degree() == 1);
}

TEST_CASE("sturm root isolation") {
  // (t - 1/4)(t + 3/4)(t - 5) restricted to [-1, 1]
  Poly p = from_roots({rat(1, 4), rat(-3, 4), Rat(5)});
  auto roots = isolate_roots(p, rat(-1), rat(1));
  REQUIRE(roots.size() == 2);
  CHECK(roots[0].is_exact());
  CHECK(*roots[0].exact() == rat(-3, 4));
  CHECK(roots[1].is_exact());
  CHECK(*roots[1].exact() == rat(1, 4));

  // t^2 - 2: irrational roots, bracket certified and refinable
  Poly r{Rat(-2), Rat(0), Rat(1)};
  auto all = isolate_all_roots(r);
  REQUIRE(all.size() == 2);
  CHECK(!all[1].is_exact());
  refine_bracket(all[1], pow2(-80));
  CHECK(all[1].iv().width() <= pow2(-80));
  CHECK(all[1].iv().lo > rat(14142, 10001));
  CHECK(all[1].iv().hi < rat(14143, 10000));
  CHECK(cmp_root_rat(all[1], Rat(1)) == 1);
  CHECK(cmp_root_rat(all[1], Rat(2)) == -1);
  CHECK(cmp_root_rat(all[0], rat(-3, 2)) == 1);

  // multiplicity is ignored, location still found
  Poly d = p * p;
  auto rr = isolate_roots(d, Rat(0), Rat(1));
  REQUIRE(rr.size() == 1);
  CHECK(*rr[0].exact() == rat(1, 4));

  auto chain = sturm_chain(squarefree_part(p));
  CHECK(count_roots(chain, rat(-1), rat(1)) == 2);
  CHECK(count_roots(chain, Rat(2), Rat(6)) == 1);
}

TEST_CASE("hamming space grid") {
  HammingSpace sp(6, 2);
  CHECK(sp.grid_point(0) == rat(-1));
  CHECK(sp.grid_point(5) == rat(2, 3));
  CHECK(sp.grid().size() == 6);
  CHECK(sp.grid_index(rat(-1, 3)) == 2);
  CHECK(sp.grid_index(rat(1)) == 6);
  CHECK(sp.grid_index(rat(1, 5)) == -1);
  CHECK(sp.on_grid(rat(1, 3)));
  CHECK(!sp.on_grid(rat(1)));  // self-product, not in T_n
  CHECK(sp.t_of_distance(4) == rat(-1, 3));
  CHECK(sp.distance_of_t(rat(-1, 3)) == Rat(4));
  CHECK(sp.cardinality() == 64);
  CHECK(HammingSpace(5, 3).cardinality() == 243);
  CHECK_THROWS_AS(HammingSpace(0, 2), ParamError);
  CHECK_THROWS_AS(HammingSpace(4, 1), ParamError);
  CHECK_THROWS_AS(sp.t_of_distance(7), ParamError);
}
