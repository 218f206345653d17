#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "amal/ideal.hpp"

#include "oracle.hpp"

#include <algorithm>

using namespace amal;

namespace {

RingPtr f2_mod_xk(int k) {
  auto f2 = make_zmod(2);
  std::vector<Elem> m(k + 1, 0);
  m[k] = 1;
  return make_poly_quotient(f2, make_polynomial(f2, m));
}

}  // namespace

TEST_CASE("ideal generation") {
  auto z12 = make_zmod(12);
  auto i = ideal_generated(z12, {2});
  CHECK(i.members == std::vector<Elem>{0, 2, 4, 6, 8, 10});

  auto z24 = make_zmod(24);
  auto j = ideal_generated(z24, {6});
  CHECK(j.members == std::vector<Elem>{0, 6, 12, 18});

  auto r = f2_mod_xk(4);
  // X^2 has encoding 4; (X^2) = {0, X^2, X^3, X^2+X^3}
  auto k = ideal_generated(r, {4});
  CHECK(k.members == std::vector<Elem>{0, 4, 8, 12});
}

TEST_CASE("ideal arithmetic") {
  auto z12 = make_zmod(12);
  auto a = ideal_generated(z12, {2});
  auto b = ideal_generated(z12, {3});
  CHECK(ideal_sum(a, b).is_whole_ring());  // (2)+(3) = (1)

  auto z24 = make_zmod(24);
  auto j = ideal_generated(z24, {6});
  auto jj = ideal_product(j, j);
  CHECK(jj.members == ideal_generated(z24, {12}).members);  // J^2 = (12) != 0

  auto r = f2_mod_xk(4);
  auto x2 = ideal_generated(r, {4});
  CHECK(ideal_product(x2, x2).is_zero());  // X^4 = 0

  auto z6 = make_zmod(6);
  CHECK_THROWS_AS(ideal_sum(a, ideal_generated(z6, {2})), input_error);
}

TEST_CASE("ideal intersection distributes against brute sets") {
  auto z12 = make_zmod(12);
  auto a = ideal_generated(z12, {4});
  auto b = ideal_generated(z12, {6});
  CHECK(ideal_intersection(a, b).members == std::vector<Elem>{0});
  auto c = ideal_generated(z12, {2});
  CHECK(ideal_intersection(c, b).members == std::vector<Elem>{0, 6});
}

TEST_CASE("all_ideals matches the brute-force subset oracle") {
  for (const auto& r : {make_zmod(12), make_zmod(8),
                        make_product(make_zmod(2), make_zmod(2)), f2_mod_xk(3)}) {
    auto brute = oracle::brute_ideals(r);
    auto got = all_ideals(r);
    INFO(r->name());
    REQUIRE(got.size() == brute.size());
    std::sort(brute.begin(), brute.end());
    std::vector<std::vector<Elem>> members;
    for (const auto& i : got) members.push_back(i.members);
    std::sort(members.begin(), members.end());
    CHECK(members == brute);
  }
}

TEST_CASE("all_ideals golden cases") {
  CHECK(all_ideals(make_zmod(12)).size() == 6);  // one per divisor

  auto r = f2_mod_xk(4);
  auto ideals = all_ideals(r);
  REQUIRE(ideals.size() == 5);  // (0) < (X^3) < (X^2) < (X) < (1)
  for (size_t i = 0; i + 1 < ideals.size(); ++i)
    CHECK(ideals[i].subset_of(ideals[i + 1]));  // sorted by size = the chain
}

TEST_CASE("all_ideals output is duplicate-free and has (0) and (1)") {
  for (const auto& r : {make_zmod(30), make_product(make_zmod(4), make_zmod(3))}) {
    auto ideals = all_ideals(r);
    CHECK(ideals.front().is_zero());
    CHECK(ideals.back().is_whole_ring());
    for (size_t i = 0; i < ideals.size(); ++i)
      for (size_t j = i + 1; j < ideals.size(); ++j)
        CHECK_FALSE(ideals[i].same_members(ideals[j]));
  }
}

TEST_CASE("primality") {
  auto z12 = make_zmod(12);
  auto p2 = ideal_generated(z12, {2});
  CHECK(is_prime(p2));
  CHECK(is_maximal(p2));
  auto p4 = ideal_generated(z12, {4});
  CHECK_FALSE(is_prime(p4));  // 2*2 in (4), 2 not in (4)
  auto f3 = make_zmod(3);
  CHECK(is_prime(zero_ideal(f3)));  // field
  CHECK_FALSE(is_prime(unit_ideal(z12)));
}

TEST_CASE("maximal implies prime over whole lattices") {
  for (const auto& r : {make_zmod(24), make_zmod(36), f2_mod_xk(3)}) {
    for (const auto& i : all_ideals(r))
      if (is_maximal(i)) CHECK(is_prime(i));
  }
}

TEST_CASE("spectra") {
  auto z48 = make_zmod(48);
  auto ms = max_spec(z48);
  REQUIRE(ms.size() == 2);
  // sorted by size: (3) = 16 elements, (2) = 24 elements
  CHECK(ms[0].members == ideal_generated(z48, {3}).members);
  CHECK(ms[1].members == ideal_generated(z48, {2}).members);
  CHECK(jacobson(z48).members == ideal_generated(z48, {6}).members);

  auto z24 = make_zmod(24);
  auto v = variety(ideal_generated(z24, {6}));
  REQUIRE(v.size() == 2);

  auto r = f2_mod_xk(8);
  auto sp = spec(r);
  REQUIRE(sp.size() == 1);
  CHECK(sp[0].size() == 128);  // (X)
}

TEST_CASE("variety of (0) is the whole spectrum") {
  for (const auto& r : {make_zmod(30), make_zmod(16), f2_mod_xk(2)}) {
    auto v = variety(zero_ideal(r));
    CHECK(v.size() == spec(r).size());
  }
}

TEST_CASE("jacobson radical alternative characterization") {
  for (const auto& r : {make_zmod(48), make_zmod(30), f2_mod_xk(3),
                        make_product(make_zmod(4), make_zmod(2))}) {
    auto jac = jacobson(r);
    for (Elem a = 0; a < r->size(); ++a) {
      bool in_alt = true;
      for (Elem s = 0; s < r->size(); ++s)
        if (!is_unit(*r, r->sub(r->one(), r->mul(a, s)))) {
          in_alt = false;
          break;
        }
      INFO(r->name(), " elem ", r->label(a));
      CHECK(in_alt == jac.contains(a));
    }
  }
}

TEST_CASE("regular ideals and annihilators") {
  auto z12 = make_zmod(12);
  CHECK_FALSE(is_regular_ideal(ideal_generated(z12, {2})));
  CHECK(is_regular_ideal(unit_ideal(z12)));
  auto z24 = make_zmod(24);
  CHECK(annihilator(z24, 6).members == ideal_generated(z24, {4}).members);
}

TEST_CASE("ideal members closed under + and ring multiples") {
  for (const auto& r : {make_zmod(18), f2_mod_xk(3)}) {
    for (const auto& i : all_ideals(r)) {
      for (Elem a : i.members) {
        for (Elem b : i.members) CHECK(i.contains(r->add(a, b)));
        for (Elem x = 0; x < r->size(); ++x) CHECK(i.contains(r->mul(x, a)));
      }
    }
  }
}

TEST_CASE("quotient by ideal and canonical surjection") {
  auto z48 = make_zmod(48);
  auto [s, f] = make_quotient(z48, ideal_generated(z48, {24}));
  CHECK(s->size() == 24);
  CHECK(f(1) == s->one());
  auto r8 = f2_mod_xk(8);
  auto [s4, g] = make_quotient(r8, ideal_generated(r8, {16}));  // (X^4)
  CHECK(s4->size() == 16);
}

TEST_CASE("minimal generators") {
  auto z12 = make_zmod(12);
  auto i = ideal_generated(z12, {4, 8, 0});
  CHECK(minimal_gens(i) == std::vector<Elem>{4});
  CHECK(i.str() == "(4)");
  CHECK(zero_ideal(z12).str() == "()");
}

TEST_CASE("image, extension and preimage") {
  auto z48 = make_zmod(48);
  auto [z24, f] = make_quotient(z48, ideal_generated(z48, {24}));
  auto i = ideal_generated(z48, {6});
  auto img = ideal_image(f, i);
  CHECK(img.members == ideal_generated(z24, {nat_embed(*z24, 6)}).members);
  auto pre = ideal_preimage(f, img);
  CHECK(pre.members == ideal_generated(z48, {6}).members);
  CHECK(extension_ideal(f, i).members == img.members);
}
