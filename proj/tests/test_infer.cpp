#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "amal/infer.hpp"
#include "amal/verifier.hpp"

using namespace amal;

namespace {

RingPtr fpx(int p, int k) {
  auto base = make_zmod(p);
  std::vector<Elem> mod(k + 1, 0);
  mod[k] = 1;
  return make_poly_quotient(base, make_polynomial(base, mod));
}

bool same_attrs(const KnowledgeBase& a, const KnowledgeBase& b) {
  if (a.entities.size() != b.entities.size()) return false;
  for (const auto& [name, rec] : a.entities) {
    auto it = b.entities.find(name);
    if (it == b.entities.end()) return false;
    if (rec.attrs.size() != it->second.attrs.size()) return false;
    for (const auto& [attr, v] : rec.attrs) {
      auto jt = it->second.attrs.find(attr);
      if (jt == it->second.attrs.end()) return false;
      if (jt->second.value != v.value) return false;
      if (jt->second.prov.label != v.prov.label) return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("rule base has unique ids and nonempty premises") {
  std::set<std::string> ids;
  for (const Rule& r : rule_base()) {
    CHECK(ids.insert(r.id).second);
    CHECK_FALSE(r.premises.empty());
    CHECK_FALSE(r.consequences.empty());
  }
}

TEST_CASE("empty knowledge base yields no derivations") {
  KnowledgeBase kb;
  auto out = apply_rules(kb);
  CHECK(out.entities.empty());
  CHECK_THROWS_AS(explain(out, "nothing", "A.is_prufer"), query_error);
}

TEST_CASE("rules do not fire while a premise is unknown") {
  KnowledgeBase kb;
  FactRecord rec;
  rec.entity = "half-known";
  rec.attrs["A.is_prufer"] = {TriState::True, {Provenance::Kind::Axiom, "x"}};
  // A.is_domain stays unknown, so the Gaussian rule must not fire.
  kb.entities[rec.entity] = rec;
  auto out = apply_rules(kb);
  CHECK(out.entities.at("half-known").get("A.is_gaussian") ==
        TriState::Unknown);
  auto app = rule_applicability(out, "half-known",
                                "prufer-domain-implies-gaussian");
  CHECK_FALSE(app.fired);
  REQUIRE(app.unknown.size() == 1);
  CHECK(app.unknown[0] == "A.is_domain = true");
}

TEST_CASE("contradictory derivation raises an inconsistency naming both chains") {
  KnowledgeBase kb;
  FactRecord rec;
  rec.entity = "broken";
  rec.attrs["A.is_total_quotient"] = {TriState::True,
                                      {Provenance::Kind::Axiom, "claimed"}};
  rec.attrs["A.is_prufer"] = {TriState::False,
                              {Provenance::Kind::Axiom, "also claimed"}};
  kb.entities[rec.entity] = rec;
  CHECK_THROWS_AS(apply_rules(kb), inconsistency_error);
  try {
    apply_rules(kb);
  } catch (const inconsistency_error& e) {
    std::string msg = e.what();
    CHECK(msg.find("A.is_prufer") != std::string::npos);
    CHECK(msg.find("also claimed") != std::string::npos);
    CHECK(msg.find("tqr-implies-prufer") != std::string::npos);
  }
}

TEST_CASE("shipped knowledge base: composite power-series entry") {
  auto kb = apply_rules(shipped_kb());
  const auto& rec =
      kb.entities.at("p-local-integers-into-rational-power-series");
  CHECK(rec.get("A.is_gaussian") == TriState::True);
  CHECK(rec.get("J_square_zero") == TriState::False);

  auto d = explain(kb, rec.entity, "A.is_gaussian");
  CHECK(d.value);
  CHECK(d.prov.label == "prufer-domain-implies-gaussian");
  REQUIRE(d.children.size() == 2);
  CHECK(d.children[0].prov.label == "ht07, Theorem 1.3");
  CHECK(d.str().find("[axiom: ht07, Theorem 1.3]") != std::string::npos);

  // The Gaussian transfer rules are blocked because J is not inside f(R).
  for (const char* r : {"T-gauss-fwd", "T-gauss-bwd"}) {
    auto app = rule_applicability(kb, rec.entity, r);
    CHECK_FALSE(app.fired);
    bool blocked_on_fR = false;
    for (const auto& f : app.failing)
      if (f == "J_subset_fR = true") blocked_on_fR = true;
    CHECK(blocked_on_fR);
    CHECK(app.str().find("blocked") != std::string::npos);
  }
}

TEST_CASE("shipped knowledge base: integers plus power series over Q") {
  auto kb = apply_rules(shipped_kb());
  const auto& rec = kb.entities.at("integers-into-rational-power-series");
  CHECK(rec.get("A.is_arithmetical") == TriState::True);
  CHECK(rec.get("J_locally_divisible") == TriState::False);
  auto app = rule_applicability(kb, rec.entity, "C-arith-1");
  CHECK_FALSE(app.fired);
  bool sq = false;
  for (const auto& f : app.failing)
    if (f == "J_square_zero = true") sq = true;
  CHECK(sq);
}

TEST_CASE("shipped knowledge base: polynomial ring into its square-zero truncation") {
  auto kb = apply_rules(shipped_kb());
  const auto& rec =
      kb.entities.at("polynomials-over-field-into-square-zero-truncation");
  CHECK(rec.get("R.is_gaussian") == TriState::True);
  CHECK(rec.get("A.is_gaussian") == TriState::True);
  CHECK(rec.get("A.is_arithmetical") == TriState::False);
  auto d = explain(kb, rec.entity, "A.is_arithmetical");
  CHECK_FALSE(d.value);
  CHECK(d.prov.label == "C-arith-2");
  bool has_jm = false;
  for (const auto& c : d.children)
    if (c.attr == "J_locally_zero_on_contraction" && !c.value) has_jm = true;
  CHECK(has_jm);
}

TEST_CASE("shipped knowledge base: idealization by the residue field") {
  auto kb = apply_rules(shipped_kb());
  const auto& rec = kb.entities.at("local-domain-idealized-by-residue-field");
  CHECK(rec.get("A.is_prufer") == TriState::True);
  CHECK(rec.get("R.is_prufer") == TriState::False);
  // No contradiction: the Prufer transfer back to R is blocked because the
  // inclusion sends regular elements to zero-divisors.
  auto app = rule_applicability(kb, rec.entity, "T-main-1");
  CHECK_FALSE(app.fired);
  REQUIRE(!app.failing.empty());
  CHECK(app.failing[0] == "f_reg_to_reg = true");
}

TEST_CASE("fixed point is idempotent") {
  auto kb = apply_rules(shipped_kb());
  CHECK(same_attrs(kb, apply_rules(kb)));
}

TEST_CASE("knowledge base file round-trips losslessly") {
  auto kb = shipped_kb();
  auto dumped = dump_kb(kb);
  auto back = parse_kb(dumped);
  CHECK(same_attrs(kb, back));
  CHECK(dump_kb(back) == dumped);
  CHECK_THROWS_AS(parse_kb("{not json"), input_error);
}

TEST_CASE("consistency bridge: finite entries agree with computed predicates") {
  auto kb = apply_rules(shipped_kb());

  {
    auto r = fpx(2, 4), s = fpx(2, 2);
    std::vector<Elem> map(r->size());
    for (Elem x = 0; x < r->size(); ++x) map[x] = x % s->size();
    auto inst = amalgamation(make_hom(r, s, std::move(map)),
                             ideal_generated(s, {2}));
    const auto& rec = kb.entities.at("trunc-deg4-into-deg2-over-f2");
    CHECK(rec.get("A.is_gaussian") ==
          (is_gaussian(inst.A) ? TriState::True : TriState::False));
    CHECK(rec.get("A.is_arithmetical") ==
          (is_arithmetical(inst.A) ? TriState::True : TriState::False));
    CHECK(rec.get("R.is_gaussian") ==
          (is_gaussian(r) ? TriState::True : TriState::False));
  }
  {
    auto r = make_zmod(48), s = make_zmod(24);
    std::vector<Elem> map(48);
    for (Elem x = 0; x < 48; ++x) map[x] = x % 24;
    auto inst = amalgamation(make_hom(r, s, std::move(map)),
                             ideal_generated(s, {6}));
    const auto& rec = kb.entities.at("mod48-into-mod24-along-six");
    CHECK(rec.get("A.is_total_quotient") ==
          (is_total_quotient_ring(inst.A) ? TriState::True : TriState::False));
    CHECK(rec.get("A.is_prufer") ==
          (is_prufer(inst.A) ? TriState::True : TriState::False));
    CHECK(rec.get("condition_star") ==
          (has_condition_star(inst) ? TriState::True : TriState::False));
  }
}
