#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "amal/ring.hpp"

#include "oracle.hpp"

using namespace amal;

TEST_CASE("zmod basics") {
  auto r = make_zmod(6);
  CHECK(r->size() == 6);
  CHECK(r->mul(2, 3) == 0);
  CHECK(is_unit(*r, 5));
  CHECK_FALSE(is_unit(*r, 2));
  CHECK(r->neg(2) == 4);
  CHECK(nat_embed(*r, 14) == 2);
  CHECK(nat_embed(*r, -1) == 5);
}

TEST_CASE("zmod 48 carrier size") {
  CHECK(make_zmod(48)->size() == 48);
}

TEST_CASE("zmod rejects n < 2") {
  CHECK_THROWS_AS(make_zmod(1), input_error);
  CHECK_THROWS_AS(make_zmod(0), input_error);
}

TEST_CASE("ring axioms hold on assorted constructions") {
  auto f2 = make_zmod(2);
  auto x2 = make_polynomial(f2, {0, 0, 1});
  for (const auto& r :
       {make_zmod(2), make_zmod(12), make_poly_quotient(f2, x2),
        make_product(make_zmod(2), make_zmod(3))}) {
    auto bad = check_ring_axioms(r);
    INFO(r->name());
    CHECK_FALSE(bad.has_value());
  }
}

TEST_CASE("poly quotient F2[X]/(X^2)") {
  auto f2 = make_zmod(2);
  auto r = make_poly_quotient(f2, make_polynomial(f2, {0, 0, 1}));
  CHECK(r->size() == 4);
  // X has index 2 in the mixed-radix encoding (coeffs (0,1))
  Elem x = 2;
  CHECK(r->label(x) == "X");
  CHECK(r->mul(x, x) == r->zero());  // nilpotent generator
  auto u = units(r);
  REQUIRE(u.size() == 2);
  CHECK(r->label(u[0]) == "1");
  CHECK(r->label(u[1]) == "X+1");
}

TEST_CASE("poly quotient F2[X]/(X^8) has 256 elements and is local-like") {
  auto f2 = make_zmod(2);
  std::vector<Elem> m(9, 0);
  m[8] = 1;
  auto r = make_poly_quotient(f2, make_polynomial(f2, m));
  CHECK(r->size() == 256);
  // every element is a unit or nilpotent
  for (Elem a = 0; a < r->size(); ++a) {
    bool nil = false;
    Elem p = a;
    for (int k = 0; k < 8; ++k) {
      if (p == r->zero()) {
        nil = true;
        break;
      }
      p = r->mul(p, a);
    }
    CHECK(is_unit(*r, a) != nil);
  }
}

TEST_CASE("poly quotient by X-1 over Z/4 is Z/4") {
  auto z4 = make_zmod(4);
  auto r = make_poly_quotient(z4, make_polynomial(z4, {3, 1}));  // X - 1
  CHECK(r->size() == 4);
  auto bad = check_ring_axioms(r);
  CHECK_FALSE(bad.has_value());
  // evaluation at 1: the class of X equals 1
  CHECK(r->mul(r->one(), r->one()) == r->one());
}

TEST_CASE("poly quotient rejects non-monic modulus") {
  auto z4 = make_zmod(4);
  CHECK_THROWS_AS(make_poly_quotient(z4, make_polynomial(z4, {0, 2})),
                  input_error);
}

TEST_CASE("product ring") {
  auto p = make_product(make_zmod(2), make_zmod(3));
  CHECK(p->size() == 6);
  Elem e10 = product_pair(p, 1, 0);
  Elem e01 = product_pair(p, 0, 1);
  CHECK(p->mul(e10, e01) == p->zero());  // orthogonal idempotents
  CHECK(p->mul(e10, e10) == e10);
  // CRT: Z/2 x Z/3 is cyclic of order 6 additively with (1,1) a generator
  Elem g = p->one();
  Elem acc = p->zero();
  std::vector<char> seen(6, 0);
  for (int i = 0; i < 6; ++i) {
    CHECK_FALSE(seen[acc]);
    seen[acc] = 1;
    acc = p->add(acc, g);
  }
}

TEST_CASE("product of the section-4 ambient sizes") {
  auto p = make_product(make_zmod(48), make_zmod(24));
  CHECK(p->size() == 1152);
}

TEST_CASE("quotient ring with canonical representatives") {
  auto r = make_zmod(48);
  std::vector<Elem> m24;
  for (Elem a = 0; a < 48; a += 24) m24.push_back(a);
  // (24) = {0, 24}
  auto [q, surj] = make_quotient_by_members(r, {0, 24}, "Z/48/(24)");
  CHECK(q->size() == 24);
  CHECK(surj(1) == q->one());
  CHECK(surj(25) == q->one());
  auto bad = check_ring_axioms(q);
  CHECK_FALSE(bad.has_value());
}

TEST_CASE("quotient by zero ideal is the identity") {
  auto r = make_zmod(6);
  auto [q, surj] = make_quotient_by_members(r, {0}, "Z/6/(0)");
  CHECK(q->size() == 6);
  for (Elem a = 0; a < 6; ++a) CHECK(surj(a) == a);
}

TEST_CASE("hom verification") {
  auto z6 = make_zmod(6);
  CHECK_NOTHROW(identity_hom(z6));
  auto z4 = make_zmod(4);
  auto z2 = make_zmod(2);
  std::vector<Elem> red = {0, 1, 0, 1};
  CHECK_NOTHROW(make_hom(z4, z2, red));
  auto z3 = make_zmod(3);
  std::vector<Elem> bad = {0, 1};
  CHECK_THROWS_AS(make_hom(z2, z3, bad), validation_error);
}

TEST_CASE("units") {
  auto z6 = make_zmod(6);
  CHECK(units(z6) == std::vector<Elem>{1, 5});
  auto z3 = make_zmod(3);
  CHECK(units(z3) == std::vector<Elem>{1, 2});
  auto f2 = make_zmod(2);
  auto r = make_poly_quotient(f2, make_polynomial(f2, {0, 0, 1}));
  CHECK(units(r).size() == 2);
}

TEST_CASE("every element of a finite ring is a unit or a zero divisor") {
  for (const auto& r : {make_zmod(8), make_zmod(12), make_zmod(30),
                        make_product(make_zmod(4), make_zmod(9))}) {
    auto zd = oracle::brute_zero_divisors(r);
    for (Elem a = 0; a < r->size(); ++a) {
      bool u = is_unit(*r, a);
      bool z = std::binary_search(zd.begin(), zd.end(), a);
      INFO(r->name(), " elem ", r->label(a));
      CHECK(u != z);
    }
  }
}

TEST_CASE("subring construction checks closure") {
  auto p = make_product(make_zmod(2), make_zmod(2));
  // diagonal {(0,0),(1,1)} is a unital subring
  std::vector<Elem> diag = {product_pair(p, 0, 0), product_pair(p, 1, 1)};
  auto s = make_subring(p, diag, "diag");
  CHECK(s->size() == 2);
  // {(0,0),(1,0)} misses 1
  CHECK_THROWS_AS(
      make_subring(p, {product_pair(p, 0, 0), product_pair(p, 1, 0)}, "bad"),
      invariant_error);
}

TEST_CASE("polynomial arithmetic") {
  auto z4 = make_zmod(4);
  auto f = make_polynomial(z4, {2, 2});  // 2X + 2
  auto g = make_polynomial(z4, {2, 2});
  auto fg = poly_mul(f, g);
  CHECK(fg.is_zero());  // (2X+2)^2 = 4(...) = 0 in Z/4
  auto h = poly_add(f, make_polynomial(z4, {2, 2}));
  CHECK(h.is_zero());
  CHECK(make_polynomial(z4, {1, 3, 0, 0}).degree() == 1);
}
